#pragma once

#include "sqgt/disjunct.hpp"

namespace sqgt {

/// Code built by horizontally concatenating K scaled copies of a binary
/// u-disjunct base: block j equals (step * (u^j - 1)/(u - 1)) * base, so the
/// blocks live on separated magnitude scales and a syndrome splits exactly
/// into per-block syndromes by integer div/mod.
struct ConcatCode {
    CodeMatrix code;      // n x (K * block_size), alphabet q
    CodeMatrix base;      // binary n x block_size
    int num_blocks = 0;   // K
    int block_size = 0;   // columns per block
    long long step = 1;   // quantizer step the code is built for
    int defect_bound = 1; // u

    /// Global 1-based subject index of local column `col` in block `j` (both 1-based).
    int global_index(int block, int col) const { return (block - 1) * block_size + col; }
};

/// Multiplier of block j: sum_{i=0}^{j-1} u^i, i.e. (u^j - 1)/(u - 1) for
/// u >= 2 and j for u = 1.
long long block_multiplier(int u, int block);

/// Largest feasible block count: the greatest K >= 1 with
/// step * block_multiplier(u, K) <= q - 1. Throws if even K = 1 does not fit
/// (q - 1 < step).
int concat_block_count(const DesignParams& params, long long step);

/// Builds the concatenated code. The base must be binary and u-disjunct for
/// the exact-decoding guarantee; set verify_base to check that (brute force,
/// only sensible for small bases).
ConcatCode concat_construct(const CodeMatrix& base, const DesignParams& params, long long step,
                            bool verify_base = false);

/// Multi-stage exact decoder. Splits the observed syndrome into per-block
/// syndromes with entrywise div/mod by the block multipliers (largest block
/// first), then cover-decodes each block. For u = 1 the positive is the
/// unique column equal to step * observed. Exact for any positive set of
/// size <= u; malformed syndromes yield consistent=false.
DecodeResult concat_decode(const Syndrome& observed, const ConcatCode& code);

/// Smallest outcome count Q such that no attainable sum reaches a Q-th
/// equidistant threshold: floor(u*(q-1)/step) + 1 (at least 2).
int minimal_levels(int q, int u, long long step);

/// Classical binary cover-free property via the channel semantics: q = 2,
/// two outcome levels, threshold 1.
DisjunctReport is_binary_u_disjunct(const CodeMatrix& code, int u);

}  // namespace sqgt
