#pragma once

// Auxiliary linear forms R(z, Y) = P_1(z) Y_1 + ... + P_p(z) Y_p and the two
// ways of pushing them along a system: the differential operator
// B = T*(dP/dz + A^t P) and the Mahler contraction B = T^d * (A^t(z) P(z^q)).

#include <map>
#include <vector>

#include "transcend/systems.hpp"

namespace transcend {

struct AuxiliaryForm {
    std::vector<Poly<FieldElement>> coeffs; // P_1 .. P_p, not all zero
    long z_degree = 0;                      // max coefficient degree
    long generation = 0;                    // steps applied since construction
    long clearing_d = 0;                    // clearing power used by the last mahler step
};

// Smallest-height nonzero form with series_valuation(sum P_i g_i) >= vstar and
// deg P_i <= n, found by exact kernel computation over the coefficient
// equations.  Coefficients are cleared to integral coordinates.  Requires
// p*(n+1) > vstar and every g_i truncated to order >= vstar + 1.
AuxiliaryForm build_auxiliary(const std::vector<TruncSeries>& g, long n, long vstar);

// Differential push-forward: B = T*(P' + A^t P).  On solutions,
// (new form)(z, g) = T * d/dz [(old form)(z, g)].
AuxiliaryForm theta_step(const AuxiliaryForm& form, const LinearSystemSpec& sys);

// Mahler push-forward: B = T^d * (A^t(z) P(z^q)) with d in {0,1} minimal such
// that B is polynomial.  On solutions, (new form)(z, g(z)) =
// T(z)^d * (old form)(z^q, g(z^q)).
AuxiliaryForm mahler_step(const AuxiliaryForm& form, const LinearSystemSpec& sys);

// sum P_i * g_i on the common truncation.
TruncSeries eval_form(const AuxiliaryForm& form, const std::vector<TruncSeries>& g);

// Max house over all coefficients of all P_i (certified upper bound).
Rational form_height(const AuxiliaryForm& form, mpfr_prec_t prec = 64);

struct MultiplicityReport {
    long trials = 0;
    long M = 0; // z-degree bound of sampled forms
    long N = 0; // X-degree bound of sampled forms
    int t = 1;  // declared transcendence degree
    unsigned long long seed = 0;
    size_t order = 0;              // truncation order used
    std::vector<long> valuations;  // one entry per trial, in trial order
    std::map<long, long> histogram;
    long max_valuation = -1;
    Rational max_ratio;  // max valuation / (M * N^t)
    long zero_draws = 0; // all-zero coefficient draws that were redrawn
};

// Empirical multiplicity data: for `trials` seeded pseudo-random nonzero
// R(z, X) with deg_z <= M, deg_X <= N, records val_z R(z, f(z)).  Trials use
// independent per-index generators, so results do not depend on scheduling.
// Throws truncation-too-small if a sampled form vanishes on the whole
// truncation.
MultiplicityReport check_multiplicity(const std::vector<FunctionSpec>& f, int t, long trials,
                                      long M, long N, unsigned long long seed,
                                      size_t order = 256);

} // namespace transcend
