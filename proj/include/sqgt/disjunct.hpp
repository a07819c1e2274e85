#pragma once

#include <optional>

#include "sqgt/core.hpp"

namespace sqgt {

/// Verdict of a disjunctness check. On failure, `witness` names the
/// offending codeword and a covering set of at most u other codewords whose
/// joint syndrome includes the codeword's own syndrome (all 1-based).
struct DisjunctReport {
    struct Witness {
        int codeword = 0;
        std::vector<int> covering;
        bool operator==(const Witness&) const = default;
    };
    bool is_disjunct = true;
    std::optional<Witness> witness;
};

/// Checks the defining property of a disjunct code for this channel: no
/// codeword's syndrome is included in the joint syndrome of u other
/// codewords. This single-codeword form is equivalent to the full
/// quantified statement over all pairs of sets of size <= u.
///
/// Codes with N <= u columns are vacuously disjunct. The search scans
/// codewords in ascending index order and covering sets in lexicographic
/// order, so the reported witness is the smallest offending pair.
DisjunctReport is_sq_disjunct(const CodeMatrix& code, const DesignParams& params,
                              const Quantizer& quantizer);

/// Certificate form for equidistant quantizers: given exactly u+1 vectors,
/// true iff rows can be assigned injectively to columns such that row k(i)
/// certifies column i, i.e. floor(x_{k(i),i}/step) exceeds the quantized sum
/// of the other entries in that row. A row can certify at most one column,
/// so the assignment exists iff every column has a certifying row.
bool unique_coordinate_check(const std::vector<std::vector<int>>& codewords, long long step);

/// Entrywise multiplication of a binary code by `factor`, re-homed in the
/// alphabet {0,...,target_q-1}. Requires 1 <= factor <= target_q - 1.
CodeMatrix scale_code(const CodeMatrix& binary_code, int factor, int target_q);

/// Convenience overload using the minimal alphabet, target_q = factor + 1.
CodeMatrix scale_code(const CodeMatrix& binary_code, int factor);

/// Decode output: the recovered subject set plus a consistency flag that is
/// false when the returned set's syndrome does not reproduce the observed one
/// (possible only for malformed inputs).
struct DecodeResult {
    PositiveSet positives;
    bool consistent = true;
};

/// Cover decoder, O(nN): returns every column whose individual syndrome is
/// included in the observed one. For a disjunct code and an observed
/// syndrome produced by at most u positives this is exactly the positive set.
DecodeResult naive_decode(const CodeMatrix& code, const Syndrome& observed,
                          const DesignParams& params, const Quantizer& quantizer);

}  // namespace sqgt
