#include "sqgt/core.hpp"

namespace sqgt {

Syndrome sq_sum(const std::vector<std::vector<int>>& codewords, long long step) {
    if (codewords.empty()) throw ValidationError("sq_sum: needs at least one codeword");
    if (step < 1) throw ValidationError("sq_sum: step must be >= 1");
    const size_t n = codewords.front().size();
    for (const auto& w : codewords)
        if (w.size() != n) throw ValidationError("sq_sum: codeword length mismatch");
    std::vector<int> out(n);
    for (size_t i = 0; i < n; ++i) {
        long long sum = 0;
        for (const auto& w : codewords) sum += w[i];
        out[i] = static_cast<int>(sum / step);
    }
    return Syndrome(std::move(out));
}

Syndrome syndrome(const CodeMatrix& code, const PositiveSet& set, const Quantizer& quantizer) {
    for (int idx : set.indices)
        if (idx < 1 || idx > code.cols())
            throw ValidationError("syndrome: column index " + std::to_string(idx) +
                                  " outside [1, " + std::to_string(code.cols()) + "]");
    std::vector<int> out(static_cast<size_t>(code.rows()));
    for (int k = 0; k < code.rows(); ++k) {
        long long sum = 0;
        for (int idx : set.indices) sum += code.at(k, idx - 1);
        out[k] = quantizer.quantize(sum);
    }
    return Syndrome(std::move(out));
}

Syndrome column_syndrome(const CodeMatrix& code, int col_index_1based, const Quantizer& quantizer) {
    if (col_index_1based < 1 || col_index_1based > code.cols())
        throw ValidationError("column_syndrome: column index out of range");
    std::vector<int> out(static_cast<size_t>(code.rows()));
    for (int k = 0; k < code.rows(); ++k)
        out[k] = quantizer.quantize(code.at(k, col_index_1based - 1));
    return Syndrome(std::move(out));
}

bool is_included(const Syndrome& ya, const Syndrome& yb) {
    if (ya.size() != yb.size()) throw ValidationError("is_included: length mismatch");
    for (int i = 0; i < ya.size(); ++i)
        if (ya[i] > yb[i]) return false;
    return true;
}

}  // namespace sqgt
