#include "sqgt/disjunct.hpp"

#include <algorithm>

namespace sqgt {

namespace {

// Visits k-subsets of {0,...,pool-1} in lexicographic order until the
// visitor returns true; returns whether any call did.
template <typename Visitor>
bool for_each_subset(int pool, int k, Visitor&& visit) {
    std::vector<int> pick(static_cast<size_t>(k));
    for (int i = 0; i < k; ++i) pick[i] = i;
    if (k == 0) return visit(pick);
    while (true) {
        if (visit(pick)) return true;
        int i = k - 1;
        while (i >= 0 && pick[i] == pool - k + i) --i;
        if (i < 0) return false;
        ++pick[i];
        for (int j = i + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
    }
}

}  // namespace

DisjunctReport is_sq_disjunct(const CodeMatrix& code, const DesignParams& params,
                              const Quantizer& quantizer) {
    params.validate();
    if (code.alphabet_size() > params.q)
        throw ValidationError("is_sq_disjunct: code alphabet exceeds params.q");
    quantizer.require_valid_for_max_sum(static_cast<long long>(params.q - 1) * params.u);

    const int N = code.cols();
    DisjunctReport report;
    if (N <= params.u) return report;  // no set of u other codewords exists

    // Per-column syndromes once; covering-set sums accumulated per row.
    std::vector<Syndrome> singles;
    singles.reserve(static_cast<size_t>(N));
    for (int c = 1; c <= N; ++c) singles.push_back(column_syndrome(code, c, quantizer));

    // TODO: parallelize the per-codeword loop for Monte Carlo workloads; the
    // verdict must stay the lexicographically first witness.
    const int n = code.rows();
    std::vector<long long> sums(static_cast<size_t>(n));
    for (int c = 0; c < N; ++c) {
        // Others in ascending index order, skipping c.
        std::vector<int> others;
        others.reserve(static_cast<size_t>(N) - 1);
        for (int j = 0; j < N; ++j)
            if (j != c) others.push_back(j);

        bool found = for_each_subset(N - 1, params.u, [&](const std::vector<int>& pick) {
            std::fill(sums.begin(), sums.end(), 0LL);
            for (int p : pick) {
                int j = others[p];
                for (int k = 0; k < n; ++k) sums[k] += code.at(k, j);
            }
            for (int k = 0; k < n; ++k)
                if (singles[c][k] > quantizer.quantize(sums[k])) return false;
            // Included: record the lexicographically first witness and stop.
            report.is_disjunct = false;
            DisjunctReport::Witness w;
            w.codeword = c + 1;
            for (int p : pick) w.covering.push_back(others[p] + 1);
            report.witness = std::move(w);
            return true;
        });
        if (found) break;
    }
    return report;
}

bool unique_coordinate_check(const std::vector<std::vector<int>>& codewords, long long step) {
    if (codewords.size() < 2)
        throw ValidationError("unique_coordinate_check: needs u+1 >= 2 codewords");
    if (step < 1) throw ValidationError("unique_coordinate_check: step must be >= 1");
    const size_t count = codewords.size();
    const size_t n = codewords.front().size();
    for (const auto& w : codewords)
        if (w.size() != n) throw ValidationError("unique_coordinate_check: length mismatch");

    for (size_t i = 0; i < count; ++i) {
        bool certified = false;
        for (size_t k = 0; k < n && !certified; ++k) {
            long long own = codewords[i][k];
            long long rest = 0;
            for (size_t j = 0; j < count; ++j)
                if (j != i) rest += codewords[j][k];
            certified = (own / step) > (rest / step);
        }
        if (!certified) return false;
    }
    return true;
}

CodeMatrix scale_code(const CodeMatrix& binary_code, int factor, int target_q) {
    if (!binary_code.is_binary())
        throw ValidationError("scale_code: input code must be binary");
    if (factor < 1) throw ValidationError("scale_code: factor must be >= 1");
    if (factor > target_q - 1)
        throw ValidationError("scale_code: factor " + std::to_string(factor) +
                              " exceeds q-1 = " + std::to_string(target_q - 1));
    std::vector<int> entries = binary_code.entries();
    for (int& e : entries) e *= factor;
    return CodeMatrix(binary_code.rows(), binary_code.cols(), target_q, std::move(entries));
}

CodeMatrix scale_code(const CodeMatrix& binary_code, int factor) {
    return scale_code(binary_code, factor, factor + 1);
}

DecodeResult naive_decode(const CodeMatrix& code, const Syndrome& observed,
                          const DesignParams& params, const Quantizer& quantizer) {
    params.validate();
    quantizer.require_valid_for_max_sum(static_cast<long long>(params.q - 1) * params.u);
    if (observed.size() != code.rows())
        throw ValidationError("naive_decode: syndrome length does not match test count");

    DecodeResult result;
    for (int c = 1; c <= code.cols(); ++c) {
        if (is_included(column_syndrome(code, c, quantizer), observed))
            result.positives.indices.push_back(c);
    }
    result.consistent = (syndrome(code, result.positives, quantizer) == observed);
    return result;
}

}  // namespace sqgt
