#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace sqgt {

// Thrown when an input violates a documented precondition or invariant.
struct ValidationError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Thrown when a requested computation exceeds a configured size guard.
struct InfeasibleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Global design parameters shared by most operations:
/// q  - size of the sample-amount alphabet {0,...,q-1}
/// Q  - number of distinct test outcome levels {0,...,Q-1}
/// u  - upper bound on the number of positives
struct DesignParams {
    int q = 2;
    int Q = 2;
    int u = 1;

    void validate() const {
        if (q < 2) throw ValidationError("DesignParams: q must be >= 2");
        if (Q < 2) throw ValidationError("DesignParams: Q must be >= 2");
        if (u < 1) throw ValidationError("DesignParams: u must be >= 1");
    }
};

/// Maps a pooled non-negative sum to an outcome level in {0,...,Q-1}.
///
/// Canonical form is the finite threshold vector (t_1,...,t_{Q-1}) with
/// 0 < t_1 < t_2 < ... < t_{Q-1}. The implicit t_0 is 0 and the region
/// above t_{Q-1} is unbounded, so quantize() is total on sums >= 0.
/// An equidistant quantizer has t_r = r*step for a single positive step.
class Quantizer {
public:
    explicit Quantizer(std::vector<long long> thresholds);

    /// Equidistant quantizer with Q levels: thresholds step, 2*step, ..., (Q-1)*step.
    static Quantizer equidistant(int num_levels, long long step);

    /// Builds a quantizer from contiguous region sizes over {0,...,sum-of-sizes - 1},
    /// e.g. sizes {2,1,2} partitions {0,...,4} into {0,1}{2}{3,4}.
    static Quantizer from_partition(const std::vector<long long>& region_sizes);

    int num_levels() const { return static_cast<int>(thresholds_.size()) + 1; }
    const std::vector<long long>& thresholds() const { return thresholds_; }

    /// Outcome level r such that t_r <= sum < t_{r+1}.
    int quantize(long long sum) const;

    bool is_equidistant() const;
    /// The common step of an equidistant quantizer; throws otherwise.
    long long step() const;

    /// True when every attainable sum in {0,...,max_sum} reaches the top
    /// region, i.e. t_{Q-1} <= max_sum. Composition-time check: a quantizer
    /// alone does not know the alphabet or the defect bound that determine
    /// the attainable range.
    bool valid_for_max_sum(long long max_sum) const {
        return thresholds_.back() <= max_sum;
    }
    void require_valid_for_max_sum(long long max_sum) const;

    /// Region string over {0,...,max_sum}, e.g. "{0,1}{2}{3,4}".
    std::string partition_string(long long max_sum) const;

    bool operator==(const Quantizer& other) const { return thresholds_ == other.thresholds_; }

private:
    std::vector<long long> thresholds_;
};

/// n x N test matrix over {0,...,q-1}. Rows are tests, columns are subject
/// signatures. Row-major storage.
class CodeMatrix {
public:
    CodeMatrix() = default;
    CodeMatrix(int rows, int cols, int alphabet_size);
    CodeMatrix(int rows, int cols, int alphabet_size, std::vector<int> entries);

    static CodeMatrix identity(int size, int value = 1);

    int rows() const { return rows_; }      // n, number of tests
    int cols() const { return cols_; }      // N, number of subjects
    int alphabet_size() const { return q_; }

    int at(int row, int col) const { return entries_[static_cast<size_t>(row) * cols_ + col]; }
    int& at(int row, int col) { return entries_[static_cast<size_t>(row) * cols_ + col]; }

    std::vector<int> column(int col) const;
    const std::vector<int>& entries() const { return entries_; }

    bool is_binary() const;
    int max_entry() const;

    /// Horizontal concatenation; operands must agree on rows and alphabet.
    static CodeMatrix hconcat(const std::vector<CodeMatrix>& blocks);

    bool operator==(const CodeMatrix& other) const = default;

private:
    int rows_ = 0;
    int cols_ = 0;
    int q_ = 2;
    std::vector<int> entries_;
};

/// Vector of quantized test outcomes, one per test.
struct Syndrome {
    std::vector<int> values;

    Syndrome() = default;
    explicit Syndrome(std::vector<int> v) : values(std::move(v)) {}
    static Syndrome zeros(int n) { return Syndrome(std::vector<int>(n, 0)); }

    int size() const { return static_cast<int>(values.size()); }
    int operator[](int i) const { return values[i]; }
    bool is_zero() const;

    bool operator==(const Syndrome& other) const = default;
};

/// Set of subject (column) indices, 1-based, sorted, distinct.
struct PositiveSet {
    std::vector<int> indices;

    PositiveSet() = default;
    /// Sorts, rejects duplicates and indices outside [1, num_subjects].
    static PositiveSet checked(std::vector<int> idx, int num_subjects);

    int size() const { return static_cast<int>(indices.size()); }
    bool empty() const { return indices.empty(); }
    bool contains(int idx) const;

    bool operator==(const PositiveSet& other) const = default;
};

}  // namespace sqgt
