#ifndef TRANSCEND_RELATIONS_HPP
#define TRANSCEND_RELATIONS_HPP

#include <vector>

#include "transcend/linalg.hpp"
#include "transcend/monomial.hpp"
#include "transcend/systems.hpp"

namespace transcend {

// Basis of the polynomial relations Q(z, X) with deg_X <= D, deg_z <= M whose
// evaluation at X = f(z) vanishes through the truncation order T.  The
// `certified` flag records whether T clears the multiplicity-style margin
// (T >= margin * M * D^m); below that the kernel is exact but heuristic as a
// statement about the untruncated functions.
struct RelationBasis {
    std::vector<MultiPoly<Poly<FieldElement>>> generators;
    int D = 0;
    long M = 0;
    size_t T = 0;
    bool certified = false;
};

RelationBasis relation_kernel(const std::vector<TruncSeries>& g, int D, long M, size_t T,
                              long margin = 4);
RelationBasis relation_kernel(const std::vector<FunctionSpec>& f, int D, long M, size_t T,
                              long margin = 4);

enum class MonomialOrder { grlex, lex };

// true when a precedes b (a < b) in the chosen order; X_1 is the largest
// variable in both orders.
bool monomial_less(const Exponents& a, const Exponents& b, MonomialOrder order);

// Remainder of p under multivariate division by G (full reduction of every
// term); the zero polynomial iff p lies in the ideal generated by G when G is
// a Groebner basis.
MultiPoly<FieldElement> normal_form(const MultiPoly<FieldElement>& p,
                                    const std::vector<MultiPoly<FieldElement>>& G,
                                    MonomialOrder order);

// Reduced Groebner basis (normal pair-selection strategy, monic generators,
// sorted by leading monomial ascending).
std::vector<MultiPoly<FieldElement>> buchberger(
    const std::vector<MultiPoly<FieldElement>>& generators, MonomialOrder order);

// Q(z, X) -> Q(alpha, X) for every generator, discarding specializations that
// vanish identically; surviving polynomials are scaled to integral, content-1
// coordinates with the leading (graded-lex) coefficient positive.
std::vector<MultiPoly<FieldElement>> specialize(const RelationBasis& rel,
                                                const FieldElement& alpha);

// The linear forms psi(X^nu * Q_i) for all shifts keeping X^nu * Q_i inside
// the basis degree bound, together with the rank of the stacked coefficient
// matrix.
struct LinearFormSet {
    Matrix<FieldElement> forms;
    size_t rank = 0;
};

LinearFormSet linear_forms_from_relations(const std::vector<MultiPoly<FieldElement>>& groebner,
                                          const MonomialBasis& basis);

// Dimension bookkeeping at total degree delta*d for m functions:
//   p = number of monomials, q = rank of the functional-relation forms,
//   r = rank of the value-relation forms, s = rank once the monomial
//   multiples of P are adjoined, u = s - r, v = p - s, w = p - q.
struct DimensionLedger {
    size_t p = 0, q = 0, r = 0, s = 0, u = 0, v = 0, w = 0;
    int m = 0;
    int t = 1;
    long delta = 0;
    long d = 0;
    Rational h;
    bool v_h_below_w = false;  // v * h < w
    Rational u_over_dt;        // u / (delta^t * d^t)
};

// value_relations is the caller-supplied generating set for the relations
// among the values (z already specialized); the functional side is recomputed
// from f with z-free coefficients at X-degree delta*d.  kernel_T = 0 picks a
// default truncation comfortably above the unknown count.
DimensionLedger ledger(const std::vector<FunctionSpec>& f, const MultiPoly<Integer>& P,
                       const std::vector<MultiPoly<FieldElement>>& value_relations,
                       long delta, long d, const Rational& h, int t, size_t kernel_T = 0);

} // namespace transcend

#endif
