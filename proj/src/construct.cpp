#include "sqgt/construct.hpp"

#include <algorithm>

namespace sqgt {

long long block_multiplier(int u, int block) {
    if (u < 1 || block < 0) throw ValidationError("block_multiplier: bad arguments");
    long long d = 0;
    long long pow = 1;
    for (int i = 0; i < block; ++i) {
        d += pow;
        pow *= u;
    }
    return d;  // 0 for block = 0
}

int concat_block_count(const DesignParams& params, long long step) {
    params.validate();
    if (step < 1) throw ValidationError("concat: step must be >= 1");
    if (step > params.q - 1)
        throw ValidationError("concat: step " + std::to_string(step) + " exceeds q-1 = " +
                              std::to_string(params.q - 1) + ", no block fits");
    int k = 1;
    while (step * block_multiplier(params.u, k + 1) <= params.q - 1) ++k;
    return k;
}

ConcatCode concat_construct(const CodeMatrix& base, const DesignParams& params, long long step,
                            bool verify_base) {
    if (!base.is_binary()) throw ValidationError("concat: base code must be binary");
    const int K = concat_block_count(params, step);
    if (verify_base) {
        auto report = is_binary_u_disjunct(base, params.u);
        if (!report.is_disjunct)
            throw ValidationError("concat: base code is not u-disjunct (codeword " +
                                  std::to_string(report.witness->codeword) + " is covered)");
    }

    std::vector<CodeMatrix> blocks;
    blocks.reserve(static_cast<size_t>(K));
    for (int j = 1; j <= K; ++j) {
        const long long mult = step * block_multiplier(params.u, j);
        // Separation: u positives from blocks below j stay strictly under
        // one nonzero entry of block j.
        if (params.u * block_multiplier(params.u, j - 1) >= block_multiplier(params.u, j))
            throw ValidationError("concat: block separation violated");
        blocks.push_back(scale_code(base, static_cast<int>(mult), params.q));
    }

    ConcatCode out{CodeMatrix::hconcat(blocks), base, K, base.cols(), step, params.u};
    if (out.code.max_entry() > params.q - 1)
        throw ValidationError("concat: entry exceeds q-1");
    return out;
}

int minimal_levels(int q, int u, long long step) {
    if (q < 2 || u < 1 || step < 1) throw ValidationError("minimal_levels: bad arguments");
    long long q_min = (static_cast<long long>(u) * (q - 1)) / step + 1;
    return static_cast<int>(std::max(2LL, q_min));
}

DisjunctReport is_binary_u_disjunct(const CodeMatrix& code, int u) {
    if (!code.is_binary()) throw ValidationError("is_binary_u_disjunct: code must be binary");
    CodeMatrix as_binary(code.rows(), code.cols(), 2, code.entries());
    DesignParams p{2, 2, u};
    return is_sq_disjunct(as_binary, p, Quantizer({1}));
}

DecodeResult concat_decode(const Syndrome& observed, const ConcatCode& code) {
    const int n = code.base.rows();
    if (observed.size() != n)
        throw ValidationError("concat_decode: syndrome length does not match test count");
    const int u = code.defect_bound;
    const int K = code.num_blocks;

    DecodeResult result;
    if (u == 1) {
        // The positive's column equals step * observed exactly.
        if (!observed.is_zero()) {
            bool found = false;
            for (int c = 1; c <= code.code.cols() && !found; ++c) {
                bool match = true;
                for (int k = 0; k < n && match; ++k)
                    match = (code.code.at(k, c - 1) == code.step * observed[k]);
                if (match) {
                    result.positives.indices.push_back(c);
                    found = true;
                }
            }
            if (!found) result.consistent = false;
        }
    } else {
        // Peel blocks from the top: divisor D_j isolates block j's share.
        std::vector<long long> carry(observed.values.begin(), observed.values.end());
        for (int j = K; j >= 1; --j) {
            const long long d = block_multiplier(u, j);
            std::vector<long long> quotient(static_cast<size_t>(n));
            for (int k = 0; k < n; ++k) {
                quotient[k] = carry[k] / d;
                carry[k] = carry[k] % d;
            }
            // A base column is positive in block j iff its support lies
            // inside the quotient's support (block syndromes are
            // multiplier-scaled copies of the base columns).
            for (int c = 1; c <= code.block_size; ++c) {
                bool covered = true;
                for (int k = 0; k < n && covered; ++k)
                    covered = (code.base.at(k, c - 1) <= quotient[k]);
                if (covered) result.positives.indices.push_back(code.global_index(j, c));
            }
        }
        std::sort(result.positives.indices.begin(), result.positives.indices.end());
    }

    // Re-simulate: flag syndromes no decoded set can reproduce.
    std::vector<std::vector<int>> cols;
    cols.reserve(result.positives.indices.size() + 1);
    cols.push_back(std::vector<int>(static_cast<size_t>(n), 0));
    for (int idx : result.positives.indices) cols.push_back(code.code.column(idx - 1));
    if (sq_sum(cols, code.step) != observed) result.consistent = false;
    return result;
}

}  // namespace sqgt
