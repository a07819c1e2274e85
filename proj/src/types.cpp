#include "sqgt/types.hpp"

#include <algorithm>
#include <sstream>

namespace sqgt {

Quantizer::Quantizer(std::vector<long long> thresholds) : thresholds_(std::move(thresholds)) {
    if (thresholds_.empty())
        throw ValidationError("Quantizer: needs at least one threshold (Q >= 2)");
    long long prev = 0;
    for (long long t : thresholds_) {
        if (t <= prev)
            throw ValidationError("Quantizer: thresholds must be strictly increasing and positive");
        prev = t;
    }
}

Quantizer Quantizer::equidistant(int num_levels, long long step) {
    if (num_levels < 2) throw ValidationError("Quantizer: Q must be >= 2");
    if (step < 1) throw ValidationError("Quantizer: step must be >= 1");
    std::vector<long long> t(static_cast<size_t>(num_levels) - 1);
    for (int r = 1; r < num_levels; ++r) t[r - 1] = static_cast<long long>(r) * step;
    return Quantizer(std::move(t));
}

Quantizer Quantizer::from_partition(const std::vector<long long>& region_sizes) {
    if (region_sizes.size() < 2)
        throw ValidationError("Quantizer: partition needs at least two regions");
    std::vector<long long> t;
    long long acc = 0;
    for (size_t i = 0; i + 1 < region_sizes.size(); ++i) {
        if (region_sizes[i] < 1) throw ValidationError("Quantizer: empty partition region");
        acc += region_sizes[i];
        t.push_back(acc);
    }
    if (region_sizes.back() < 1) throw ValidationError("Quantizer: empty partition region");
    return Quantizer(std::move(t));
}

int Quantizer::quantize(long long sum) const {
    if (sum < 0) throw ValidationError("quantize: sum must be non-negative");
    auto it = std::upper_bound(thresholds_.begin(), thresholds_.end(), sum);
    return static_cast<int>(it - thresholds_.begin());
}

bool Quantizer::is_equidistant() const {
    long long eta = thresholds_[0];
    for (size_t r = 0; r < thresholds_.size(); ++r)
        if (thresholds_[r] != static_cast<long long>(r + 1) * eta) return false;
    return true;
}

long long Quantizer::step() const {
    if (!is_equidistant()) throw ValidationError("Quantizer: not equidistant");
    return thresholds_[0];
}

void Quantizer::require_valid_for_max_sum(long long max_sum) const {
    if (!valid_for_max_sum(max_sum)) {
        throw ValidationError("Quantizer: top threshold " + std::to_string(thresholds_.back()) +
                              " exceeds the maximum attainable sum " + std::to_string(max_sum));
    }
}

std::string Quantizer::partition_string(long long max_sum) const {
    std::ostringstream os;
    long long lo = 0;
    for (size_t r = 0; r <= thresholds_.size(); ++r) {
        long long hi = (r < thresholds_.size()) ? thresholds_[r] - 1 : max_sum;
        os << '{';
        for (long long v = lo; v <= hi; ++v) {
            if (v > lo) os << ',';
            os << v;
        }
        os << '}';
        lo = hi + 1;
    }
    return os.str();
}

CodeMatrix::CodeMatrix(int rows, int cols, int alphabet_size)
    : rows_(rows), cols_(cols), q_(alphabet_size),
      entries_(static_cast<size_t>(rows) * cols, 0) {
    if (rows < 1 || cols < 1) throw ValidationError("CodeMatrix: needs n >= 1 and N >= 1");
    if (alphabet_size < 2) throw ValidationError("CodeMatrix: alphabet size must be >= 2");
}

CodeMatrix::CodeMatrix(int rows, int cols, int alphabet_size, std::vector<int> entries)
    : rows_(rows), cols_(cols), q_(alphabet_size), entries_(std::move(entries)) {
    if (rows < 1 || cols < 1) throw ValidationError("CodeMatrix: needs n >= 1 and N >= 1");
    if (alphabet_size < 2) throw ValidationError("CodeMatrix: alphabet size must be >= 2");
    if (entries_.size() != static_cast<size_t>(rows) * cols)
        throw ValidationError("CodeMatrix: entry count does not match n*N");
    for (int e : entries_)
        if (e < 0 || e >= q_)
            throw ValidationError("CodeMatrix: entry " + std::to_string(e) +
                                  " outside alphabet [0, " + std::to_string(q_ - 1) + "]");
}

CodeMatrix CodeMatrix::identity(int size, int value) {
    if (size < 1) throw ValidationError("CodeMatrix: identity size must be >= 1");
    if (value < 1) throw ValidationError("CodeMatrix: identity value must be >= 1");
    CodeMatrix m(size, size, value + 1);
    for (int i = 0; i < size; ++i) m.at(i, i) = value;
    return m;
}

std::vector<int> CodeMatrix::column(int col) const {
    std::vector<int> out(static_cast<size_t>(rows_));
    for (int r = 0; r < rows_; ++r) out[r] = at(r, col);
    return out;
}

bool CodeMatrix::is_binary() const {
    return std::all_of(entries_.begin(), entries_.end(), [](int e) { return e == 0 || e == 1; });
}

int CodeMatrix::max_entry() const {
    return *std::max_element(entries_.begin(), entries_.end());
}

CodeMatrix CodeMatrix::hconcat(const std::vector<CodeMatrix>& blocks) {
    if (blocks.empty()) throw ValidationError("hconcat: no blocks");
    int rows = blocks.front().rows();
    int q = blocks.front().alphabet_size();
    int cols = 0;
    for (const auto& b : blocks) {
        if (b.rows() != rows || b.alphabet_size() != q)
            throw ValidationError("hconcat: mismatched block shapes");
        cols += b.cols();
    }
    CodeMatrix out(rows, cols, q);
    int offset = 0;
    for (const auto& b : blocks) {
        for (int r = 0; r < rows; ++r)
            for (int c = 0; c < b.cols(); ++c) out.at(r, offset + c) = b.at(r, c);
        offset += b.cols();
    }
    return out;
}

bool Syndrome::is_zero() const {
    return std::all_of(values.begin(), values.end(), [](int v) { return v == 0; });
}

PositiveSet PositiveSet::checked(std::vector<int> idx, int num_subjects) {
    std::sort(idx.begin(), idx.end());
    for (size_t i = 0; i < idx.size(); ++i) {
        if (idx[i] < 1 || idx[i] > num_subjects)
            throw ValidationError("PositiveSet: index " + std::to_string(idx[i]) +
                                  " outside [1, " + std::to_string(num_subjects) + "]");
        if (i > 0 && idx[i] == idx[i - 1])
            throw ValidationError("PositiveSet: duplicate index " + std::to_string(idx[i]));
    }
    PositiveSet s;
    s.indices = std::move(idx);
    return s;
}

bool PositiveSet::contains(int idx) const {
    return std::binary_search(indices.begin(), indices.end(), idx);
}

}  // namespace sqgt
