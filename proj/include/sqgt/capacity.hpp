#pragma once

#include <optional>

#include "sqgt/types.hpp"

namespace sqgt {

/// Probability distribution of a single subject's sample amount over
/// {0,...,q-1}.
struct SourceDistribution {
    std::vector<double> probs;

    /// Validates: length >= 2, entries >= 0, sum within 1e-12 of 1.
    static SourceDistribution checked(std::vector<double> probs);
    /// q = 2 shorthand: probability p that a subject contributes amount 1.
    static SourceDistribution bernoulli(double p);

    int alphabet_size() const { return static_cast<int>(probs.size()); }
};

using Pmf = std::vector<double>;

/// Shannon entropy in bits.
double entropy_bits(const Pmf& pmf);

/// PMF of the sum of `count` i.i.d. draws (count-fold self-convolution);
/// count = 0 gives the point mass at 0. Support {0,...,count*(q-1)}.
Pmf pmf_sum(const SourceDistribution& pt, int count);

/// Distribution of a single test outcome with m positives: the sum PMF
/// collapsed through the quantizer, P(y = l) = P(t_l <= sum < t_{l+1}).
Pmf outcome_pmf(const SourceDistribution& pt, int m, const Quantizer& quantizer);

/// Mutual information (bits) between the sample amounts of i of the m
/// positives and the pair (remaining amounts, outcome). The outcome is a
/// deterministic function of all amounts, so this equals the conditional
/// outcome entropy given the other m-i amounts, and for i = m the plain
/// outcome entropy. Computed by conditioning on the partial sum of the
/// other m-i amounts; by exchangeability the split of positives into the
/// two groups does not matter.
double mutual_info_i(const SourceDistribution& pt, int m, int i, const Quantizer& quantizer);

/// One evaluated design point: per_i[k] holds the mutual information for
/// group size k+1, and alpha_bits = min_i per_i[i-1] / i.
struct CapacityPoint {
    int m;
    SourceDistribution pt;
    Quantizer quantizer;
    double alpha_bits = 0.0;
    std::vector<double> per_i;
};

CapacityPoint alpha(const SourceDistribution& pt, int m, const Quantizer& quantizer);

struct SearchOptions {
    double grid_step = 0.01;
    bool refine = true;
    double refine_min_step = 1e-4;
    /// When set, only the source distribution is searched.
    std::optional<Quantizer> restrict_quantizer;
};

/// Best design found over all contiguous Q-part partitions of the attainable
/// sums {0,...,m(q-1)} and a simplex grid over source distributions, with
/// coordinate-ascent refinement of the distribution at the best point.
/// The result is a lower bound on the channel capacity (the supremum of
/// alpha over designs); rates below that supremum are achievable and rates
/// above it are not. Deterministic: ties are broken by the first find in
/// lexicographic partition order, then grid order.
CapacityPoint capacity_search(int m, int q, int num_levels, const SearchOptions& opts = {});

/// Test counts sufficient for (resp. required by) vanishing error
/// probability with N subjects and m positives, from the max over group
/// sizes of a log-combinatorial numerator divided by the corresponding
/// mutual information. Logs are base 2 and binomials are evaluated in
/// log-space. A zero mutual information with a positive numerator yields
/// +infinity.
double sufficient_tests(long long num_subjects, int m, const SourceDistribution& pt,
                        const Quantizer& quantizer);
double necessary_tests(long long num_subjects, int m, const SourceDistribution& pt,
                       const Quantizer& quantizer);

}  // namespace sqgt
