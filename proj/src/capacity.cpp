#include "sqgt/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

namespace sqgt {

namespace {

constexpr double kSumTolerance = 1e-12;

// log2 of C(n, k), k in [0, n].
double log2_binomial(long long n, long long k) {
    if (k < 0 || k > n) return -std::numeric_limits<double>::infinity();
    return (std::lgamma(static_cast<double>(n) + 1.0) - std::lgamma(static_cast<double>(k) + 1.0) -
            std::lgamma(static_cast<double>(n - k) + 1.0)) /
           std::numbers::ln2;
}

// Collapses a sum PMF shifted by `offset` through the quantizer.
Pmf quantized_pmf(const Pmf& sum_pmf, long long offset, const Quantizer& quantizer) {
    Pmf out(static_cast<size_t>(quantizer.num_levels()), 0.0);
    for (size_t w = 0; w < sum_pmf.size(); ++w)
        out[static_cast<size_t>(quantizer.quantize(offset + static_cast<long long>(w)))] +=
            sum_pmf[w];
    return out;
}

double conditional_outcome_entropy(const Pmf& own_sum, const Pmf& other_sum,
                                   const Quantizer& quantizer) {
    double h = 0.0;
    for (size_t w2 = 0; w2 < other_sum.size(); ++w2) {
        if (other_sum[w2] == 0.0) continue;
        h += other_sum[w2] * entropy_bits(quantized_pmf(own_sum, static_cast<long long>(w2), quantizer));
    }
    return h;
}

}  // namespace

SourceDistribution SourceDistribution::checked(std::vector<double> probs) {
    if (probs.size() < 2)
        throw ValidationError("SourceDistribution: needs at least two symbols");
    double sum = 0.0;
    for (double p : probs) {
        if (p < 0.0 || !std::isfinite(p))
            throw ValidationError("SourceDistribution: probabilities must be non-negative");
        sum += p;
    }
    if (std::abs(sum - 1.0) > kSumTolerance)
        throw ValidationError("SourceDistribution: probabilities sum to " + std::to_string(sum));
    SourceDistribution d;
    d.probs = std::move(probs);
    return d;
}

SourceDistribution SourceDistribution::bernoulli(double p) {
    if (p < 0.0 || p > 1.0) throw ValidationError("SourceDistribution: p outside [0, 1]");
    return checked({1.0 - p, p});
}

double entropy_bits(const Pmf& pmf) {
    double h = 0.0;
    for (double p : pmf)
        if (p > 0.0) h -= p * std::log2(p);
    return h;
}

Pmf pmf_sum(const SourceDistribution& pt, int count) {
    if (count < 0) throw ValidationError("pmf_sum: count must be >= 0");
    Pmf acc{1.0};
    for (int c = 0; c < count; ++c) {
        Pmf next(acc.size() + pt.probs.size() - 1, 0.0);
        for (size_t a = 0; a < acc.size(); ++a) {
            if (acc[a] == 0.0) continue;
            for (size_t b = 0; b < pt.probs.size(); ++b) next[a + b] += acc[a] * pt.probs[b];
        }
        acc = std::move(next);
    }
    return acc;
}

Pmf outcome_pmf(const SourceDistribution& pt, int m, const Quantizer& quantizer) {
    if (m < 0) throw ValidationError("outcome_pmf: m must be >= 0");
    quantizer.require_valid_for_max_sum(static_cast<long long>(m) * (pt.alphabet_size() - 1));
    return quantized_pmf(pmf_sum(pt, m), 0, quantizer);
}

double mutual_info_i(const SourceDistribution& pt, int m, int i, const Quantizer& quantizer) {
    if (m < 1) throw ValidationError("mutual_info_i: m must be >= 1");
    if (i < 1 || i > m) throw ValidationError("mutual_info_i: i outside [1, m]");
    quantizer.require_valid_for_max_sum(static_cast<long long>(m) * (pt.alphabet_size() - 1));
    return conditional_outcome_entropy(pmf_sum(pt, i), pmf_sum(pt, m - i), quantizer);
}

CapacityPoint alpha(const SourceDistribution& pt, int m, const Quantizer& quantizer) {
    if (m < 1) throw ValidationError("alpha: m must be >= 1");
    quantizer.require_valid_for_max_sum(static_cast<long long>(m) * (pt.alphabet_size() - 1));

    CapacityPoint point{m, pt, quantizer, std::numeric_limits<double>::infinity(), {}};
    point.per_i.reserve(static_cast<size_t>(m));
    // Share the sum PMFs across all group sizes.
    std::vector<Pmf> sums(static_cast<size_t>(m) + 1);
    for (int j = 0; j <= m; ++j) sums[static_cast<size_t>(j)] = pmf_sum(pt, j);
    for (int i = 1; i <= m; ++i) {
        double info = conditional_outcome_entropy(sums[static_cast<size_t>(i)],
                                                  sums[static_cast<size_t>(m - i)], quantizer);
        point.per_i.push_back(info);
        point.alpha_bits = std::min(point.alpha_bits, info / i);
    }
    return point;
}

namespace {

// All strictly increasing (Q-1)-subsets of {1,...,max_sum}, lexicographic.
std::vector<std::vector<long long>> enumerate_thresholds(long long max_sum, int num_levels) {
    std::vector<std::vector<long long>> out;
    const int k = num_levels - 1;
    std::vector<long long> pick(static_cast<size_t>(k));
    for (int i = 0; i < k; ++i) pick[i] = i + 1;
    while (true) {
        out.push_back(pick);
        int i = k - 1;
        while (i >= 0 && pick[i] == max_sum - k + i + 1) --i;
        if (i < 0) break;
        ++pick[i];
        for (int j = i + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
    }
    return out;
}

// Integer compositions (k_0,...,k_{q-1}) of `total`, lexicographic.
void enumerate_compositions(int q, int total, std::vector<int>& current,
                            const std::function<void(const std::vector<int>&)>& emit) {
    if (static_cast<int>(current.size()) == q - 1) {
        current.push_back(total);
        emit(current);
        current.pop_back();
        return;
    }
    for (int k = 0; k <= total; ++k) {
        current.push_back(k);
        enumerate_compositions(q, total - k, current, emit);
        current.pop_back();
    }
}

double evaluate_alpha(const std::vector<Pmf>& sums, int m, const Quantizer& quantizer) {
    double best = std::numeric_limits<double>::infinity();
    for (int i = 1; i <= m; ++i) {
        double info = conditional_outcome_entropy(sums[static_cast<size_t>(i)],
                                                  sums[static_cast<size_t>(m - i)], quantizer);
        best = std::min(best, info / i);
    }
    return best;
}

std::vector<Pmf> sum_stack(const SourceDistribution& pt, int m) {
    std::vector<Pmf> sums(static_cast<size_t>(m) + 1);
    sums[0] = {1.0};
    for (int j = 1; j <= m; ++j) {
        const Pmf& prev = sums[static_cast<size_t>(j - 1)];
        Pmf next(prev.size() + pt.probs.size() - 1, 0.0);
        for (size_t a = 0; a < prev.size(); ++a) {
            if (prev[a] == 0.0) continue;
            for (size_t b = 0; b < pt.probs.size(); ++b) next[a + b] += prev[a] * pt.probs[b];
        }
        sums[static_cast<size_t>(j)] = std::move(next);
    }
    return sums;
}

}  // namespace

CapacityPoint capacity_search(int m, int q, int num_levels, const SearchOptions& opts) {
    if (m < 1) throw ValidationError("capacity_search: m must be >= 1");
    if (q < 2) throw ValidationError("capacity_search: q must be >= 2");
    if (num_levels < 2) throw ValidationError("capacity_search: Q must be >= 2");
    if (opts.grid_step <= 0.0 || opts.grid_step >= 1.0)
        throw ValidationError("capacity_search: grid step must lie in (0, 1)");
    const long long max_sum = static_cast<long long>(m) * (q - 1);
    if (num_levels > max_sum + 1)
        throw ValidationError("capacity_search: Q = " + std::to_string(num_levels) +
                              " exceeds the " + std::to_string(max_sum + 1) +
                              " attainable sum values");

    std::vector<Quantizer> quantizers;
    if (opts.restrict_quantizer) {
        opts.restrict_quantizer->require_valid_for_max_sum(max_sum);
        if (opts.restrict_quantizer->num_levels() != num_levels)
            throw ValidationError("capacity_search: fixed quantizer has wrong level count");
        quantizers.push_back(*opts.restrict_quantizer);
    } else {
        for (auto& t : enumerate_thresholds(max_sum, num_levels)) quantizers.emplace_back(std::move(t));
    }

    const int grid = std::max(1, static_cast<int>(std::llround(1.0 / opts.grid_step)));
    std::vector<std::vector<double>> grid_points;
    {
        std::vector<int> current;
        std::function<void(const std::vector<int>&)> emit = [&](const std::vector<int>& counts) {
            std::vector<double> probs(static_cast<size_t>(q));
            for (int s = 0; s < q; ++s) probs[static_cast<size_t>(s)] = static_cast<double>(counts[s]) / grid;
            grid_points.push_back(std::move(probs));
        };
        enumerate_compositions(q, grid, current, emit);
    }

    double best_value = -1.0;
    size_t best_quantizer = 0;
    size_t best_point = 0;
    for (size_t qi = 0; qi < quantizers.size(); ++qi) {
        for (size_t pi = 0; pi < grid_points.size(); ++pi) {
            SourceDistribution pt;
            pt.probs = grid_points[pi];
            const double value = evaluate_alpha(sum_stack(pt, m), m, quantizers[qi]);
            if (value > best_value) {
                best_value = value;
                best_quantizer = qi;
                best_point = pi;
            }
        }
    }

    std::vector<double> probs = grid_points[best_point];
    const Quantizer& chosen = quantizers[best_quantizer];
    if (opts.refine) {
        double step = opts.grid_step;
        long long evals_left = 100000;  // hard stop against float-noise cycling
        while (step >= opts.refine_min_step && evals_left > 0) {
            bool improved = false;
            for (int a = 0; a < q && evals_left > 0; ++a) {
                for (int b = 0; b < q && evals_left > 0; ++b) {
                    if (a == b || probs[static_cast<size_t>(a)] < step) continue;
                    std::vector<double> candidate = probs;
                    candidate[static_cast<size_t>(a)] -= step;
                    candidate[static_cast<size_t>(b)] += step;
                    SourceDistribution pt;
                    pt.probs = candidate;
                    const double value = evaluate_alpha(sum_stack(pt, m), m, chosen);
                    --evals_left;
                    if (value > best_value) {
                        best_value = value;
                        probs = std::move(candidate);
                        improved = true;
                    }
                }
            }
            if (!improved) step /= 2.0;
        }
    }

    return alpha(SourceDistribution::checked(std::move(probs)), m, chosen);
}

namespace {

double bound_from_numerators(const std::vector<double>& log_numerators,
                             const std::vector<double>& infos) {
    double worst = 0.0;
    for (size_t k = 0; k < log_numerators.size(); ++k) {
        const double num = log_numerators[k];
        if (!std::isfinite(num)) continue;  // impossible error event, no constraint
        if (infos[k] <= 0.0) {
            if (num > 0.0) return std::numeric_limits<double>::infinity();
            continue;
        }
        worst = std::max(worst, num / infos[k]);
    }
    return worst;
}

}  // namespace

double sufficient_tests(long long num_subjects, int m, const SourceDistribution& pt,
                        const Quantizer& quantizer) {
    if (m < 1) throw ValidationError("sufficient_tests: m must be >= 1");
    if (num_subjects <= m)
        throw ValidationError("sufficient_tests: needs N > m");
    std::vector<double> nums, infos;
    for (int i = 1; i <= m; ++i) {
        nums.push_back(log2_binomial(num_subjects - m, i) + log2_binomial(m, i));
        infos.push_back(mutual_info_i(pt, m, i, quantizer));
    }
    return bound_from_numerators(nums, infos);
}

double necessary_tests(long long num_subjects, int m, const SourceDistribution& pt,
                       const Quantizer& quantizer) {
    if (m < 1) throw ValidationError("necessary_tests: m must be >= 1");
    if (num_subjects <= m)
        throw ValidationError("necessary_tests: needs N > m");
    std::vector<double> nums, infos;
    for (int i = 1; i <= m; ++i) {
        nums.push_back(log2_binomial(num_subjects - m + i, i));
        infos.push_back(mutual_info_i(pt, m, i, quantizer));
    }
    return bound_from_numerators(nums, infos);
}

}  // namespace sqgt
