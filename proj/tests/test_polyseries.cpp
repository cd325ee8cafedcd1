#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "transcend/linalg.hpp"
#include "transcend/monomial.hpp"
#include "transcend/poly.hpp"
#include "transcend/series.hpp"

using namespace transcend;

namespace {

Rational rq(long n, long d = 1) {
    Rational r(n);
    r /= Rational(d);
    return r;
}

FieldElement fe(long n, long d = 1) { return FieldElement(rq(n, d)); }

Poly<FieldElement> rpoly(const std::vector<long>& c) {
    std::vector<FieldElement> v;
    for (long x : c) v.push_back(fe(x));
    return Poly<FieldElement>{v};
}

TruncSeries sfrom(const std::vector<Rational>& v, size_t order) {
    TruncSeries s(order);
    for (size_t i = 0; i < v.size() && i < order; ++i) s.set_coeff(i, FieldElement(v[i]));
    return s;
}

Rational inv_factorial(unsigned long n) {
    Rational r(1);
    r /= Rational(factorial(n));
    return r;
}

TruncSeries exp_series(size_t order) {
    TruncSeries s(order);
    for (size_t n = 0; n < order; ++n) s.set_coeff(n, FieldElement(inv_factorial(n)));
    return s;
}

TruncSeries sin_series(size_t order) {
    TruncSeries s(order);
    for (size_t n = 1; n < order; n += 2) {
        Rational c = inv_factorial(n);
        if ((n / 2) % 2 == 1) c = -c;
        s.set_coeff(n, FieldElement(c));
    }
    return s;
}

TruncSeries cos_series(size_t order) {
    TruncSeries s(order);
    for (size_t n = 0; n < order; n += 2) {
        Rational c = inv_factorial(n);
        if ((n / 2) % 2 == 1) c = -c;
        s.set_coeff(n, FieldElement(c));
    }
    return s;
}

} // namespace

TEST_CASE("polynomial arithmetic and division") {
    Poly<FieldElement> p = rpoly({-1, 0, 1}); // z^2 - 1
    Poly<FieldElement> q = rpoly({1, 1});     // z + 1
    CHECK(p.deg() == 2);
    CHECK(p.valuation() == 0);
    CHECK(rpoly({0, 0, 3, 5}).valuation() == 2);
    CHECK((p * q).deg() == 3);

    auto [quo, rem] = p.divrem(q);
    CHECK(rem.is_zero());
    CHECK(quo == rpoly({-1, 1}));
    CHECK(p.exact_div(q) == rpoly({-1, 1}));
    CHECK_THROWS_WITH_AS((void)rpoly({1, 1, 1}).exact_div(q), doctest::Contains("inexact"),
                         error);

    CHECK(poly_gcd(p, rpoly({-1, 1})) == rpoly({-1, 1})); // gcd(z^2-1, z-1) monic
    CHECK(poly_gcd(p, rpoly({2})) == rpoly({1}));
    CHECK(p.derivative() == rpoly({0, 2}));
    CHECK(p.eval(fe(3)) == fe(8));
    CHECK(p.compose_zpow(3) == rpoly({-1, 0, 0, 0, 0, 0, 1}));

    Poly<Integer> h{std::vector<Integer>{Integer(3), Integer(-7), Integer(2)}};
    CHECK(poly_height(h) == Integer(7));
}

TEST_CASE("series valuation: pinned examples") {
    TruncSeries a(10);
    a.set_coeff(3, fe(1));
    a.set_coeff(5, fe(1));
    CHECK(series_valuation(a) == 3);

    CHECK_FALSE(series_valuation(TruncSeries(10)).has_value());

    TruncSeries d = sin_series(8) - sfrom({rq(0), rq(1)}, 8); // sin z - z
    REQUIRE(series_valuation(d).has_value());
    CHECK(*series_valuation(d) == 3);
    CHECK(d.coeff(3) == fe(-1, 6));
}

TEST_CASE("series arithmetic: truncation discipline and ring laws") {
    TruncSeries a = exp_series(9);
    TruncSeries b = sin_series(7);
    TruncSeries c = cos_series(8);

    CHECK((a + b).order() == 7);
    CHECK((a * b).order() == 7);
    CHECK((a * b) == (b * a));
    CHECK(((a * b) * c) == (a * (b * c)));
    CHECK((a.truncated(5)).order() == 5);

    // valuation additivity below the common order
    TruncSeries z3(12), z4(12);
    z3.set_coeff(3, fe(2));
    z4.set_coeff(4, fe(5, 3));
    auto v = series_valuation(z3 * z4);
    REQUIRE(v.has_value());
    CHECK(*v == 7);

    // derivative and pow
    CHECK(sin_series(8).derivative() == cos_series(7));
    CHECK((sfrom({rq(1), rq(1)}, 6).pow(2)) == sfrom({rq(1), rq(2), rq(1)}, 6));

    // substitution z -> z^k keeps only determined coefficients
    TruncSeries g = exp_series(4).substitute_zpow(2, 7);
    CHECK(g.coeff(0) == fe(1));
    CHECK(g.coeff(2) == fe(1));
    CHECK(g.coeff(4) == fe(1, 2));
    CHECK(g.coeff(6) == fe(1, 6));
    CHECK_THROWS_AS((void)exp_series(4).substitute_zpow(2, 8), error);
}

TEST_CASE("basis_size: pinned examples") {
    CHECK(basis_size(2, 2) == Integer(6));
    CHECK(basis_size(1, 5) == Integer(6));
    CHECK(basis_size(3, 4) == Integer(35));
    CHECK(basis_size_ul(3, 4) == 35u);
}

TEST_CASE("monomial basis: graded order and index round-trip") {
    MonomialBasis b(2, 2);
    REQUIRE(b.size() == 6);
    CHECK(b.exponent(0) == Exponents{0, 0});
    CHECK(b.exponent(1) == Exponents{1, 0});
    CHECK(b.exponent(2) == Exponents{0, 1});
    CHECK(b.exponent(3) == Exponents{2, 0});
    CHECK(b.exponent(4) == Exponents{1, 1});
    CHECK(b.exponent(5) == Exponents{0, 2});

    MonomialBasis big(3, 4);
    REQUIRE(big.size() == 35);
    for (size_t i = 0; i < big.size(); ++i) CHECK(big.index_of(big.exponent(i)) == i);
    // degree filtration is contiguous
    for (size_t i = 1; i < big.size(); ++i)
        CHECK(total_degree(big.exponent(i - 1)) <= total_degree(big.exponent(i)));
    CHECK_THROWS_WITH_AS((void)big.index_of(Exponents{5, 0, 0}),
                         doctest::Contains("degree-bound-too-small"), error);
}

TEST_CASE("monomial_eval: pinned examples") {
    MonomialBasis b1(1, 4);
    std::vector<TruncSeries> fexp{exp_series(12)};
    CHECK(monomial_eval(b1, fexp, Exponents{0}) == TruncSeries::one(12));

    TruncSeries e2 = monomial_eval(b1, fexp, Exponents{2});
    for (size_t n = 0; n < 12; ++n) {
        Rational want = rq(1);
        for (size_t i = 0; i < n; ++i) want *= rq(2);
        want *= inv_factorial(n);
        CHECK(e2.coeff(n) == FieldElement(want));
    }

    MonomialBasis b2(2, 3);
    std::vector<TruncSeries> trig{cos_series(8), sin_series(8)};
    TruncSeries half_sin2 = monomial_eval(b2, trig, Exponents{1, 1}); // (sin 2z)/2
    CHECK(half_sin2.coeff(0) == fe(0));
    CHECK(half_sin2.coeff(1) == fe(1));
    CHECK(half_sin2.coeff(2) == fe(0));
    CHECK(half_sin2.coeff(3) == fe(-2, 3));
    CHECK(half_sin2.coeff(5) == fe(2, 15));

    CHECK_THROWS_AS((void)monomial_eval(b2, trig, Exponents{4, 0}), error);
}

TEST_CASE("monomial_eval is multiplicative over exponent addition") {
    MonomialBasis b(2, 6);
    std::vector<TruncSeries> f{exp_series(10), cos_series(10)};
    Exponents mu{2, 1}, nu{1, 2}, sum{3, 3};
    CHECK(monomial_eval(b, f, sum) ==
          monomial_eval(b, f, mu) * monomial_eval(b, f, nu));
}

TEST_CASE("all_monomials matches per-monomial evaluation") {
    MonomialBasis b(2, 3);
    std::vector<TruncSeries> f{cos_series(9), sin_series(9)};
    std::vector<TruncSeries> all = all_monomials(b, f);
    REQUIRE(all.size() == b.size());
    for (size_t i = 0; i < b.size(); ++i) CHECK(all[i] == monomial_eval(b, f, b.exponent(i)));
}

TEST_CASE("multivariate polynomials over the basis") {
    MonomialBasis b(2, 2);
    MultiPoly<FieldElement> P(2);
    P.add_term(Exponents{2, 0}, fe(1));
    P.add_term(Exponents{0, 2}, fe(1));
    P.add_term(Exponents{0, 0}, fe(-1));
    CHECK(P.degree() == 2);

    // Pythagorean identity: P(cos, sin) is the zero truncation.
    std::vector<TruncSeries> trig{cos_series(10), sin_series(10)};
    TruncSeries v = eval_series(P, trig);
    CHECK_FALSE(series_valuation(v).has_value());

    // the same polynomial as a dense coefficient vector
    std::vector<FieldElement> dense = psi_linear_form(P, b);
    REQUIRE(dense.size() == 6);
    CHECK(dense[0] == fe(-1));
    CHECK(dense[3] == fe(1));
    CHECK(dense[5] == fe(1));
    CHECK(dense[1] == fe(0));

    MonomialBasis small(2, 1);
    CHECK_THROWS_WITH_AS((void)psi_linear_form(P, small),
                         doctest::Contains("degree-bound-too-small"), error);

    MultiPoly<FieldElement> Q = P * P;
    CHECK(Q.degree() == 4);
    CHECK(Q.coeff(Exponents{2, 2}) == fe(2));
    CHECK((P - P).degree() == -1);

    FieldElement at = eval_field(P, {fe(3, 5), fe(4, 5)});
    CHECK(at.is_zero());
}

TEST_CASE("linear algebra kernel: exact rank, kernel, det, inverse") {
    Matrix<FieldElement> M{{fe(1), fe(2)}, {fe(2), fe(4)}};
    CHECK(matrix_rank(M) == 1);
    auto ker = kernel_basis(M, 2);
    REQUIRE(ker.size() == 1);
    // kernel vector (-2, 1): x0 + 2 x1 = 0
    CHECK(ker[0][0] == fe(-2));
    CHECK(ker[0][1] == fe(1));

    Matrix<FieldElement> A{{fe(2), fe(1)}, {fe(7), fe(4)}};
    auto inv = matrix_inverse(A);
    auto prod = matrix_mul(A, inv);
    CHECK(prod[0][0] == fe(1));
    CHECK(prod[0][1] == fe(0));
    CHECK(prod[1][0] == fe(0));
    CHECK(prod[1][1] == fe(1));
    CHECK_THROWS_WITH_AS((void)matrix_inverse(M), doctest::Contains("singular"), error);

    Matrix<Poly<FieldElement>> Z{{rpoly({0, 1}), rpoly({1})}, {rpoly({1}), rpoly({0, 1})}};
    CHECK(poly_matrix_det(Z) == rpoly({-1, 0, 1}));

    // kernel of a 2x4 map, checked by applying the matrix
    Matrix<FieldElement> W{{fe(1), fe(0), fe(2), fe(-1)}, {fe(0), fe(1), fe(1), fe(1)}};
    auto kw = kernel_basis(W, 4);
    REQUIRE(kw.size() == 2);
    for (const auto& v : kw) {
        auto img = matrix_apply(W, v);
        for (const auto& x : img) CHECK(x.is_zero());
    }
}
