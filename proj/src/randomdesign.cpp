#include "sqgt/randomdesign.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "sqgt/construct.hpp"

namespace sqgt {

namespace {

// Exact C(n, k) in 64 bits; 0 when k < 0 or k > n. Throws on overflow.
unsigned long long binomial_exact(long long n, long long k) {
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    unsigned long long r = 1;
    for (long long i = 1; i <= k; ++i) {
        const unsigned long long factor = static_cast<unsigned long long>(n - k + i);
        if (r > ~0ULL / factor)
            throw InfeasibleError("binomial_exact: 64-bit overflow");
        r = r * factor / static_cast<unsigned long long>(i);
    }
    return r;
}

unsigned long long checked_pow(unsigned long long base, int exp) {
    unsigned long long r = 1;
    for (int i = 0; i < exp; ++i) {
        if (base != 0 && r > ~0ULL / base)
            throw InfeasibleError("checked_pow: 64-bit overflow");
        r *= base;
    }
    return r;
}

// Unbiased uniform draw from {0,...,bound-1}.
int draw_below(std::mt19937_64& gen, int bound) {
    const unsigned long long rem = (~0ULL % bound + 1) % bound;  // 2^64 mod bound
    unsigned long long x;
    do {
        x = gen();
    } while (rem != 0 && x > ~0ULL - rem);
    return static_cast<int>(x % bound);
}

}  // namespace

unsigned long long acceptable_row_count(int q, long long step, int defect_bound) {
    if (q < 2) throw ValidationError("acceptable_row_count: q must be >= 2");
    if (step < 1) throw ValidationError("acceptable_row_count: step must be >= 1");
    if (defect_bound < 1) throw ValidationError("acceptable_row_count: u must be >= 1");
    const int u = defect_bound;
    const unsigned long long total = checked_pow(static_cast<unsigned long long>(q), u + 1);

    const long long top = (q - 1) / step;  // I: highest reachable quantized first entry
    unsigned long long certifying = 0;
    for (long long i = 1; i < top; ++i)
        certifying += static_cast<unsigned long long>(step) * binomial_exact(i * step + u - 1, u);
    if (top >= 1)
        certifying +=
            static_cast<unsigned long long>(q - top * step) * binomial_exact(top * step + u - 1, u);
    return total - certifying;
}

CriticalRateReport critical_rate(int q, long long step, int defect_bound, long long num_tests,
                                 double epsilon) {
    if (num_tests < 1) throw ValidationError("critical_rate: n must be >= 1");
    if (epsilon <= 0.0) throw ValidationError("critical_rate: epsilon must be > 0");

    CriticalRateReport report;
    report.q = q;
    report.step = step;
    report.defect_bound = defect_bound;
    report.num_tests = num_tests;
    report.epsilon = epsilon;
    report.acceptable_rows = acceptable_row_count(q, step, defect_bound);

    const int u = defect_bound;
    const double total = std::pow(static_cast<double>(q), u + 1);
    report.gamma = total / static_cast<double>(report.acceptable_rows);
    report.asymptotic_rate_bits = std::log2(report.gamma) / (u + 1);
    const double log2_eps_ufact =
        (std::log(epsilon) + std::lgamma(static_cast<double>(u) + 1.0)) / std::numbers::ln2;
    report.critical_rate_bits =
        report.asymptotic_rate_bits + log2_eps_ufact / (static_cast<double>(num_tests) * (u + 1));
    return report;
}

CodeMatrix random_code(int num_tests, int num_subjects, int q, unsigned long long seed) {
    if (num_tests < 1 || num_subjects < 1)
        throw ValidationError("random_code: needs n >= 1 and N >= 1");
    if (q < 2) throw ValidationError("random_code: q must be >= 2");
    std::mt19937_64 gen(seed);
    std::vector<int> entries(static_cast<size_t>(num_tests) * num_subjects);
    for (int& e : entries) e = draw_below(gen, q);
    return CodeMatrix(num_tests, num_subjects, q, std::move(entries));
}

MonteCarloResult estimate_disjunct_probability(int num_tests, int num_subjects, int q,
                                               long long step, int defect_bound, int trials,
                                               unsigned long long seed, double work_cap) {
    if (trials < 1) throw ValidationError("estimate_disjunct_probability: trials must be >= 1");
    DesignParams params{q, minimal_levels(q, defect_bound, step), defect_bound};
    params.validate();
    Quantizer quantizer = Quantizer::equidistant(params.Q, step);
    quantizer.require_valid_for_max_sum(static_cast<long long>(q - 1) * defect_bound);

    // Subset enumeration cost: N * C(N-1, u) * n syndrome comparisons.
    double per_trial = static_cast<double>(num_subjects) * num_tests;
    for (int i = 0; i < defect_bound; ++i)
        per_trial *= static_cast<double>(num_subjects - 1 - i) / (i + 1);
    if (per_trial > work_cap)
        throw InfeasibleError("estimate_disjunct_probability: per-trial work " +
                              std::to_string(per_trial) + " exceeds cap " +
                              std::to_string(work_cap));

    MonteCarloResult result;
    result.trials = trials;
    result.outcomes.reserve(static_cast<size_t>(trials));
    for (int t = 0; t < trials; ++t) {
        std::seed_seq seq{static_cast<unsigned int>(seed), static_cast<unsigned int>(seed >> 32),
                          static_cast<unsigned int>(t)};
        std::mt19937_64 gen(seq);
        std::vector<int> entries(static_cast<size_t>(num_tests) * num_subjects);
        for (int& e : entries) e = draw_below(gen, q);
        CodeMatrix code(num_tests, num_subjects, q, std::move(entries));
        TrialOutcome outcome;
        outcome.trial = t;
        outcome.report = is_sq_disjunct(code, params, quantizer);
        if (outcome.report.is_disjunct) ++result.disjunct_count;
        result.outcomes.push_back(std::move(outcome));
    }
    result.fraction = static_cast<double>(result.disjunct_count) / trials;
    return result;
}

}  // namespace sqgt
