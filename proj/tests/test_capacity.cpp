#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "sqgt/capacity.hpp"

using namespace sqgt;

namespace {

const Quantizer kConventional({1});  // Q = 2, threshold 1

SourceDistribution random_interior_distribution(std::mt19937& rng, int q) {
    std::uniform_real_distribution<double> unif(0.05, 1.0);
    std::vector<double> raw(static_cast<size_t>(q));
    double sum = 0.0;
    for (double& v : raw) {
        v = unif(rng);
        sum += v;
    }
    for (double& v : raw) v /= sum;
    // Exact renormalization of the last entry.
    double head = 0.0;
    for (size_t i = 0; i + 1 < raw.size(); ++i) head += raw[i];
    raw.back() = 1.0 - head;
    return SourceDistribution::checked(std::move(raw));
}

Quantizer random_partition_quantizer(std::mt19937& rng, long long max_sum, int levels) {
    // Random (levels-1)-subset of {1,...,max_sum}.
    std::vector<long long> pool(static_cast<size_t>(max_sum));
    for (long long t = 1; t <= max_sum; ++t) pool[static_cast<size_t>(t - 1)] = t;
    std::shuffle(pool.begin(), pool.end(), rng);
    std::vector<long long> t(pool.begin(), pool.begin() + levels - 1);
    std::sort(t.begin(), t.end());
    return Quantizer(std::move(t));
}

}  // namespace

TEST_CASE("pmf_sum: binomial, delta, three-symbol convolution") {
    SourceDistribution half = SourceDistribution::bernoulli(0.5);
    Pmf two = pmf_sum(half, 2);
    CHECK(two.size() == 3);
    CHECK(two[0] == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(two[1] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(two[2] == doctest::Approx(0.25).epsilon(1e-12));

    Pmf zero = pmf_sum(half, 0);
    CHECK(zero == Pmf{1.0});

    SourceDistribution tri = SourceDistribution::checked({0.33, 0.34, 0.33});
    Pmf conv = pmf_sum(tri, 2);
    REQUIRE(conv.size() == 5);
    CHECK(conv[2] == doctest::Approx(0.3334).epsilon(1e-12));

    SUBCASE("every produced pmf sums to one with bounded entropy") {
        std::mt19937 rng(91);
        for (int round = 0; round < 50; ++round) {
            const int q = 2 + static_cast<int>(rng() % 4);
            const int count = static_cast<int>(rng() % 6);
            Pmf pmf = pmf_sum(random_interior_distribution(rng, q), count);
            CHECK(pmf.size() == static_cast<size_t>(count * (q - 1) + 1));
            double total = 0.0;
            for (double p : pmf) total += p;
            CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
            const double h = entropy_bits(pmf);
            CHECK(h >= 0.0);
            CHECK(h <= std::log2(static_cast<double>(pmf.size())) + 1e-12);
        }
    }
}

TEST_CASE("outcome_pmf: conventional binomial, table config, degenerate source") {
    Pmf conventional = outcome_pmf(SourceDistribution::bernoulli(0.5), 2, kConventional);
    CHECK(conventional[0] == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(conventional[1] == doctest::Approx(0.75).epsilon(1e-12));

    // q=3 source with the three-region quantizer {0,1}{2}{3,4}.
    Pmf table = outcome_pmf(SourceDistribution::checked({0.33, 0.34, 0.33}), 2, Quantizer({2, 3}));
    REQUIRE(table.size() == 3);
    CHECK(table[0] == doctest::Approx(0.1089 + 0.2244).epsilon(1e-12));
    CHECK(table[1] == doctest::Approx(0.3334).epsilon(1e-12));
    CHECK(table[2] == doctest::Approx(0.2244 + 0.1089).epsilon(1e-12));

    Pmf degenerate = outcome_pmf(SourceDistribution::checked({1.0, 0.0}), 3, kConventional);
    CHECK(degenerate[0] == doctest::Approx(1.0).epsilon(1e-15));

    SUBCASE("q=2 matches the explicit binomial form") {
        std::mt19937 rng(13);
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        for (int round = 0; round < 30; ++round) {
            const int m = 1 + static_cast<int>(rng() % 5);
            const double p = unif(rng);
            Quantizer qz = random_partition_quantizer(rng, m, 2);
            Pmf pmf = outcome_pmf(SourceDistribution::bernoulli(p), m, qz);
            const long long t1 = qz.thresholds()[0];
            double below = 0.0;
            for (long long j = 0; j < t1; ++j)
                below += std::exp(std::lgamma(m + 1.0) - std::lgamma(j + 1.0) -
                                  std::lgamma(m - j + 1.0)) *
                         std::pow(p, static_cast<double>(j)) *
                         std::pow(1.0 - p, static_cast<double>(m - j));
            CHECK(pmf[0] == doctest::Approx(below).epsilon(1e-12));
        }
    }
}

TEST_CASE("mutual_info_i: closed-form anchors") {
    SourceDistribution half = SourceDistribution::bernoulli(0.5);
    CHECK(mutual_info_i(half, 1, 1, kConventional) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(mutual_info_i(half, 2, 1, kConventional) == doctest::Approx(0.5).epsilon(1e-12));
    const double h_full = entropy_bits({0.25, 0.75});
    CHECK(mutual_info_i(half, 2, 2, kConventional) == doctest::Approx(h_full).epsilon(1e-12));
    CHECK(h_full == doctest::Approx(0.811278124459).epsilon(1e-9));

    CHECK_THROWS_AS(mutual_info_i(half, 2, 0, kConventional), ValidationError);
    CHECK_THROWS_AS(mutual_info_i(half, 2, 3, kConventional), ValidationError);

    SUBCASE("i=m equals the outcome entropy") {
        std::mt19937 rng(37);
        for (int round = 0; round < 40; ++round) {
            const int q = 2 + static_cast<int>(rng() % 2);
            const int m = 1 + static_cast<int>(rng() % 3);
            const long long max_sum = static_cast<long long>(m) * (q - 1);
            const int levels = 2 + static_cast<int>(rng() % static_cast<int>(max_sum));
            SourceDistribution pt = random_interior_distribution(rng, q);
            Quantizer qz = random_partition_quantizer(rng, max_sum, levels);
            CHECK(mutual_info_i(pt, m, m, qz) ==
                  doctest::Approx(entropy_bits(outcome_pmf(pt, m, qz))).epsilon(1e-9));
        }
    }

    SUBCASE("dual path: joint enumeration equals convolution decomposition") {
        std::mt19937 rng(53);
        for (int round = 0; round < 20; ++round) {
            const int q = 2 + static_cast<int>(rng() % 2);
            const int m = 1 + static_cast<int>(rng() % 3);
            const long long max_sum = static_cast<long long>(m) * (q - 1);
            const int levels = 2 + static_cast<int>(rng() % static_cast<int>(max_sum));
            SourceDistribution pt = random_interior_distribution(rng, q);
            Quantizer qz = random_partition_quantizer(rng, max_sum, levels);
            for (int i = 1; i <= m; ++i) {
                const double via_joint = oracles::joint_mutual_info(pt, m, i, qz);
                const double via_conv = mutual_info_i(pt, m, i, qz);
                CHECK(std::abs(via_joint - via_conv) < 1e-10);
            }
        }
    }
}

TEST_CASE("alpha: single-term and two-term minima") {
    SourceDistribution half = SourceDistribution::bernoulli(0.5);
    CapacityPoint one = alpha(half, 1, kConventional);
    CHECK(one.alpha_bits == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(one.per_i.size() == 1);

    CapacityPoint two = alpha(half, 2, kConventional);
    CHECK(two.per_i[0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(two.alpha_bits == doctest::Approx(0.4056).epsilon(1e-3));
    CHECK(two.alpha_bits == doctest::Approx(std::min(0.5, two.per_i[1] / 2)).epsilon(1e-12));
    // Last component is the plain outcome entropy.
    CHECK(two.per_i.back() ==
          doctest::Approx(entropy_bits(outcome_pmf(half, 2, kConventional))).epsilon(1e-9));
}

TEST_CASE("capacity_search: analytic anchor at one positive") {
    CapacityPoint best = capacity_search(1, 2, 2);
    CHECK(best.alpha_bits == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(best.pt.probs[1] == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(best.quantizer.thresholds() == std::vector<long long>{1});
}

TEST_CASE("capacity_search: dominates a strong known q=3 design at m=2") {
    SourceDistribution reference_pt = SourceDistribution::checked({0.33, 0.34, 0.33});
    Quantizer reference_qz({2, 3});
    const double reference_alpha = alpha(reference_pt, 2, reference_qz).alpha_bits;
    CHECK(reference_alpha > 0.0);

    // The reference distribution sits on the 0.01 grid, so the sweep must
    // weakly dominate it.
    CapacityPoint best = capacity_search(2, 3, 3);
    CHECK(best.alpha_bits >= reference_alpha - 1e-6);
}

TEST_CASE("capacity_search: finer quantization cannot hurt") {
    SearchOptions coarse;
    coarse.grid_step = 0.05;
    CapacityPoint q3 = capacity_search(2, 3, 3, coarse);
    CapacityPoint q5 = capacity_search(2, 3, 5, coarse);  // full adder resolution
    CHECK(q5.alpha_bits >= q3.alpha_bits);

    SUBCASE("adder-resolution search equals unquantized information") {
        // Unit thresholds at Q = m(q-1)+1 leave each sum its own level.
        CHECK(q5.quantizer.thresholds() == std::vector<long long>{1, 2, 3, 4});
        const double h_sum = entropy_bits(pmf_sum(q5.pt, 2));
        CHECK(q5.per_i.back() == doctest::Approx(h_sum).epsilon(1e-9));
    }
}

TEST_CASE("capacity_search: restricted quantizer searches the source only") {
    SearchOptions opts;
    opts.restrict_quantizer = Quantizer({2, 3});
    CapacityPoint best = capacity_search(2, 3, 3, opts);
    CHECK(best.quantizer == Quantizer({2, 3}));
    CHECK(best.alpha_bits >=
          alpha(SourceDistribution::checked({0.33, 0.34, 0.33}), 2, Quantizer({2, 3})).alpha_bits -
              1e-6);
}

TEST_CASE("capacity_search: input validation") {
    CHECK_THROWS_AS(capacity_search(1, 2, 3), ValidationError);  // Q exceeds sum values
    SearchOptions bad;
    bad.grid_step = 0.0;
    CHECK_THROWS_AS(capacity_search(2, 2, 2, bad), ValidationError);
}

TEST_CASE("test-count bounds: anchors and scaling") {
    SourceDistribution half = SourceDistribution::bernoulli(0.5);
    CHECK(sufficient_tests(1024, 1, half, kConventional) ==
          doctest::Approx(std::log2(1023.0)).epsilon(1e-9));
    CHECK(necessary_tests(1024, 1, half, kConventional) ==
          doctest::Approx(10.0).epsilon(1e-9));
    CHECK(necessary_tests(2, 1, half, kConventional) == doctest::Approx(1.0).epsilon(1e-12));

    SUBCASE("vanishing information reports an unbounded test count") {
        SourceDistribution degenerate = SourceDistribution::checked({1.0, 0.0});
        CHECK(std::isinf(sufficient_tests(16, 2, degenerate, kConventional)));
        CHECK(std::isinf(necessary_tests(16, 2, degenerate, kConventional)));
    }

    SUBCASE("log-space binomials match exact big-number evaluation") {
        std::mt19937 rng(83);
        for (int round = 0; round < 25; ++round) {
            const int m = 1 + static_cast<int>(rng() % 5);
            const long long N = m + 2 + static_cast<long long>(rng() % 4000);
            SourceDistribution pt = random_interior_distribution(rng, 2);
            // Exact products in 128-bit integers, then log2.
            auto exact_log2_binom = [](long long n, long long k) {
                __int128 v = 1;
                for (long long j = 0; j < k; ++j) v = v * (n - j) / (j + 1);
                return std::log2(static_cast<double>(v));
            };
            double suff_expect = 0.0, nec_expect = 0.0;
            for (int i = 1; i <= m; ++i) {
                const double info = mutual_info_i(pt, m, i, kConventional);
                if (i <= N - m)
                    suff_expect = std::max(
                        suff_expect,
                        (exact_log2_binom(N - m, i) + exact_log2_binom(m, i)) / info);
                nec_expect = std::max(nec_expect, exact_log2_binom(N - m + i, i) / info);
            }
            CHECK(sufficient_tests(N, m, pt, kConventional) ==
                  doctest::Approx(suff_expect).epsilon(1e-9));
            CHECK(necessary_tests(N, m, pt, kConventional) ==
                  doctest::Approx(nec_expect).epsilon(1e-9));
        }
    }

    SUBCASE("necessary stays within a constant of sufficient") {
        std::mt19937 rng(67);
        for (int round = 0; round < 30; ++round) {
            const int q = 2 + static_cast<int>(rng() % 2);
            const int m = 1 + static_cast<int>(rng() % 4);
            const long long N = 32 + static_cast<long long>(rng() % 2048);
            const long long max_sum = static_cast<long long>(m) * (q - 1);
            const int levels = 2 + static_cast<int>(rng() % static_cast<int>(max_sum));
            SourceDistribution pt = random_interior_distribution(rng, q);
            Quantizer qz = random_partition_quantizer(rng, max_sum, levels);
            const double suff = sufficient_tests(N, m, pt, qz);
            const double nec = necessary_tests(N, m, pt, qz);
            CHECK(std::isfinite(suff));
            CHECK(std::isfinite(nec));
            // The numerators differ by at most log2 C(N,m)/C(N-m,m) + log2 C(m,i).
            const double i1 = mutual_info_i(pt, m, m, qz);
            const double slack = (m * std::log2(static_cast<double>(N) / (N - m)) + m) / i1;
            CHECK(nec <= suff + slack + 1e-9);
        }
    }

    SUBCASE("both bounds scale inversely with alpha for a fixed quantizer") {
        std::mt19937 rng(71);
        for (int round = 0; round < 30; ++round) {
            const int q = 2 + static_cast<int>(rng() % 2);
            const int m = 2 + static_cast<int>(rng() % 3);
            const long long N = 64 + static_cast<long long>(rng() % 512);
            const long long max_sum = static_cast<long long>(m) * (q - 1);
            const int levels = 2 + static_cast<int>(rng() % static_cast<int>(max_sum));
            SourceDistribution pt = random_interior_distribution(rng, q);
            Quantizer qz = random_partition_quantizer(rng, max_sum, levels);

            CapacityPoint point = alpha(pt, m, qz);
            if (point.alpha_bits <= 1e-9) continue;
            // alpha * bound is pinched between the extreme per-i numerator
            // rates, which depend only on (N, m).
            auto densities = [&](bool suff) {
                double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
                for (int i = 1; i <= m; ++i) {
                    const double num =
                        suff ? std::lgamma(static_cast<double>(N - m + 1)) -
                                   std::lgamma(static_cast<double>(i + 1)) -
                                   std::lgamma(static_cast<double>(N - m - i + 1)) +
                                   std::lgamma(static_cast<double>(m + 1)) -
                                   std::lgamma(static_cast<double>(i + 1)) -
                                   std::lgamma(static_cast<double>(m - i + 1))
                             : std::lgamma(static_cast<double>(N - m + i + 1)) -
                                   std::lgamma(static_cast<double>(i + 1)) -
                                   std::lgamma(static_cast<double>(N - m + 1));
                    const double num_bits = num / std::numbers::ln2;
                    lo = std::min(lo, num_bits / i);
                    hi = std::max(hi, num_bits / i);
                }
                return std::pair<double, double>{lo, hi};
            };
            auto [slo, shi] = densities(true);
            auto [nlo, nhi] = densities(false);
            const double scaled_suff =
                point.alpha_bits * sufficient_tests(N, m, pt, qz);
            const double scaled_nec = point.alpha_bits * necessary_tests(N, m, pt, qz);
            CHECK(scaled_suff >= slo - 1e-9);
            CHECK(scaled_suff <= shi + 1e-9);
            CHECK(scaled_nec >= nlo - 1e-9);
            CHECK(scaled_nec <= nhi + 1e-9);
        }
    }
}
