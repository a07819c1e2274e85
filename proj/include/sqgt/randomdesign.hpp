#pragma once

#include "sqgt/disjunct.hpp"

namespace sqgt {

/// Critical-rate analysis of the uniform random code ensemble.
struct CriticalRateReport {
    int q = 2;
    long long step = 1;            // eta
    int defect_bound = 1;          // u
    long long num_tests = 1;       // n
    double epsilon = 0.05;
    unsigned long long acceptable_rows = 0;  // A
    double gamma = 1.0;                      // q^{u+1} / A
    double asymptotic_rate_bits = 0.0;       // log2(gamma) / (u+1)
    double critical_rate_bits = 0.0;         // asymptotic + log2(eps*u!) / (n*(u+1))
};

/// Number of q-ary rows x of length u+1 that do NOT certify their first
/// entry, i.e. floor(x_1/step) <= floor((x_2+...+x_{u+1})/step). Closed
/// form: q^{u+1} minus the certifying count
///   sum_{i=1}^{I-1} step*C(i*step+u-1, u) + (q - I*step)*C(I*step+u-1, u),
/// with I = floor((q-1)/step). Stars-and-bars is exact because certifying
/// tail sums stay below the per-entry cap. Exact integer arithmetic.
unsigned long long acceptable_row_count(int q, long long step, int defect_bound);

/// Evaluates the critical rate below which a uniform random q-ary code of
/// length n is disjunct with probability at least 1 - epsilon. A fully
/// non-certifying ensemble (A = q^{u+1}) gives gamma = 1 and asymptotic
/// rate 0; that is a report, not an error.
CriticalRateReport critical_rate(int q, long long step, int defect_bound, long long num_tests,
                                 double epsilon);

/// n x N matrix with i.i.d. entries uniform on {0,...,q-1} from a seeded
/// deterministic generator (identical output for identical seeds on any
/// platform).
CodeMatrix random_code(int num_tests, int num_subjects, int q, unsigned long long seed);

struct TrialOutcome {
    int trial = 0;
    DisjunctReport report;
};

struct MonteCarloResult {
    int trials = 0;
    int disjunct_count = 0;
    double fraction = 0.0;
    std::vector<TrialOutcome> outcomes;
};

/// Fraction of seeded random codes that are disjunct for the equidistant
/// design (q, step, u). Trial t uses a generator derived from (seed, t), so
/// results do not depend on evaluation order. Throws InfeasibleError when
/// the per-trial subset enumeration would exceed work_cap elementary steps.
MonteCarloResult estimate_disjunct_probability(int num_tests, int num_subjects, int q,
                                               long long step, int defect_bound, int trials,
                                               unsigned long long seed,
                                               double work_cap = 5e8);

}  // namespace sqgt
