#pragma once

// Scalar functional equations and their first-order matrix forms.
//
// A function is described by a linear equation over K[z]:
//   differential:  a_0(z) f + a_1(z) f' + ... + a_m(z) f^(m)        = 0
//   mahler:        a_0(z) f(z) + a_1(z) f(z^q) + ... + a_m(z) f(z^(q^m)) = 0
// together with enough leading series coefficients to pin down a unique
// solution.  Matrix systems store A = N/T with N a polynomial matrix and T a
// single scalar denominator polynomial, so T*A is always polynomial.

#include <optional>
#include <string>
#include <vector>

#include "transcend/linalg.hpp"
#include "transcend/numberfield.hpp"
#include "transcend/poly.hpp"
#include "transcend/series.hpp"

namespace transcend {

enum class SystemKind { differential, mahler };

struct FunctionSpec {
    SystemKind kind = SystemKind::differential;
    long q = 0; // mahler radix; unused for differential
    std::vector<Poly<FieldElement>> coeffs; // a_0 .. a_m, ascending by operator order
    std::vector<FieldElement> initial;      // leading series coefficients c_0, c_1, ...
    std::string name;

    // Optional growth data used by point evaluation: for a differential
    // function, |sigma(c_n * n!)| <= C^n for every embedding; for a Mahler
    // function, house(c_n) <= G * B^n.
    std::optional<Rational> growth_C;
    std::optional<Rational> growth_B;
    std::optional<Rational> growth_G;

    int order() const { return static_cast<int>(coeffs.size()) - 1; }

    // differential: a_m != 0; mahler: q >= 2 and a_0 * a_m != 0.
    void validate() const;
};

struct LinearSystemSpec {
    SystemKind kind = SystemKind::differential;
    long q = 0;
    size_t size = 0;
    Matrix<Poly<FieldElement>> N; // N = T * A, entries polynomial
    Poly<FieldElement> T;         // scalar common denominator, nonzero

    void validate() const; // shape checks; mahler additionally requires det A != 0

    // Numerator of det A once gcd(det N, T^size) is cancelled.
    Poly<FieldElement> det_numerator() const;
};

struct RegularityReport {
    bool regular = false;
    // Index of the failing orbit point for a singular verdict (0 for the
    // differential test, which only looks at alpha itself).
    long witness_n = -1;
    // First n >= 1 at which the certified minimum-modulus bound excludes the
    // whole remaining orbit (mahler verdicts only).
    long cutoff_n = -1;
};

// First-order companion form of a scalar equation: Y' = A Y with
// Y = (f, f', ..., f^(m-1)), or Y(z^q) = A(z) Y(z) with
// Y = (f(z), f(z^q), ..., f(z^(q^(m-1)))).  A has ones above the diagonal and
// last row -a_j/a_m, so T = a_m.
LinearSystemSpec companion(const FunctionSpec& fn);

// Block-diagonal sum of systems of equal kind (and equal q for mahler);
// T is the least common denominator of the blocks.
LinearSystemSpec direct_sum(const std::vector<LinearSystemSpec>& blocks);

// Unique series solution truncated at `order` terms.  Throws math errors
// "insufficient-initial-data" / "inconsistent-initial-data" (with the first
// bad index in the message) when the initial segment does not pin down a
// solution.
TruncSeries extend_series(const FunctionSpec& fn, size_t order);

// The companion solution vector at a common truncation order:
// (f, f', ..., f^(m-1)) or (f(z), f(z^q), ...).
std::vector<TruncSeries> solution_vector(const FunctionSpec& fn, size_t order);

// Exact regularity test at alpha for the given embedding.
//   differential: regular iff T(alpha) != 0.
//   mahler: requires |sigma_j(alpha)| < 1; walks the orbit alpha^(q^n),
//   exact-testing membership in the zero set of T * num(det A) until the
//   certified minimum modulus of that set's nonzero roots (shrunk by a 2^-10
//   margin) excludes the rest of the orbit.
RegularityReport is_regular(const LinearSystemSpec& sys, const FieldElement& alpha,
                            int embedding = 0);

// Composed Mahler system A_ell(z) = A(z^(q^(ell-1))) ... A(z^q) A(z), returned
// over the radix q^ell with entries reduced against the composed denominator.
LinearSystemSpec mahler_compose(const LinearSystemSpec& sys, int ell);

// Smallest ell >= 1 with |sigma_j(alpha)|^(q^ell) < rho; requires
// 0 < |sigma_j(alpha)| < 1 and rho > 0.
long choose_ell(const Rational& rho, const FieldElement& alpha, long q, int embedding = 0);

} // namespace transcend
