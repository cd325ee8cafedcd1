#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "transcend/lll.hpp"
#include "transcend/measure.hpp"
#include "transcend/relations.hpp"

using namespace transcend;

namespace {

Rational rq(long n, long d = 1) { return Rational(n) / Rational(d); }
FieldElement fe(long n, long d = 1) { return FieldElement(rq(n, d)); }

Poly<FieldElement> rpoly(std::vector<long> cs) {
    std::vector<FieldElement> v;
    for (long c : cs) v.push_back(fe(c));
    return Poly<FieldElement>(v);
}

FunctionSpec exp_spec(bool with_growth = true) {
    FunctionSpec f;
    f.kind = SystemKind::differential;
    f.coeffs = {rpoly({-1}), rpoly({1})};
    f.initial = {fe(1)};
    f.name = "exp";
    if (with_growth) f.growth_C = rq(1);
    return f;
}

FunctionSpec cos_spec() {
    FunctionSpec f;
    f.kind = SystemKind::differential;
    f.coeffs = {rpoly({1}), rpoly({0}), rpoly({1})};
    f.initial = {fe(1), fe(0)};
    f.name = "cos";
    f.growth_C = rq(1);
    return f;
}

FunctionSpec sin_spec() {
    FunctionSpec f = cos_spec();
    f.initial = {fe(0), fe(1)};
    f.name = "sin";
    return f;
}

// f(z) = sum_n z^(2^n), n >= 0:  z*f + (-1-z)*f(z^2) + f(z^4) = 0
FunctionSpec lacunary_spec() {
    FunctionSpec f;
    f.kind = SystemKind::mahler;
    f.q = 2;
    f.coeffs = {rpoly({0, 1}), rpoly({-1, -1}), rpoly({1})};
    f.initial = {fe(0), fe(1)};
    f.name = "lacunary";
    f.growth_G = rq(1);
    f.growth_B = rq(1);
    return f;
}

MultiPoly<Integer> ipoly(int m, std::vector<std::pair<Exponents, long>> terms) {
    MultiPoly<Integer> p(m);
    for (auto& [e, c] : terms) p.add_term(e, Integer(c));
    return p;
}

MultiPoly<FieldElement> fpoly(int m, std::vector<std::pair<Exponents, long>> terms) {
    MultiPoly<FieldElement> p(m);
    for (auto& [e, c] : terms) p.add_term(e, fe(c));
    return p;
}

} // namespace

TEST_CASE("point evaluation pins classical values and tail behaviour") {
    // e = 2.71828182845904523536...
    ComplexBall e1 = eval_at(exp_spec(), fe(1), 128);
    CHECK(e1.re_string().find("2.718281828459045235360287") != std::string::npos);
    CHECK(e1.abs_lb() > rq(27182, 10000));
    CHECK(e1.abs_ub() < rq(27183, 10000));

    // lacunary value at 1/2 = 0.81642150902189313...
    ComplexBall l2 = eval_at(lacunary_spec(), fe(1, 2), 128);
    CHECK(l2.re_string().find("8.164215090218931") != std::string::npos);
    // pull-back at 1/2 agrees with the direct disk at 1/4: f(1/2) = 1/2 + f(1/4)
    ComplexBall l4 = eval_at(lacunary_spec(), fe(1, 4), 128);
    Rational diff_lo = (l2 - l4).abs_lb(), diff_ub = (l2 - l4).abs_ub();
    CHECK(diff_lo > rq(1, 2) - rq(1, 1000000));
    CHECK(rat_abs(diff_ub - rq(1, 2)) < rq(1, 1000000));

    // evaluation at the origin is exact
    ComplexBall at0 = eval_at(exp_spec(), fe(0), 64);
    CHECK(mpfr_cmp_si(at0.re().get(), 1) == 0);
    CHECK(mpfr_zero_p(at0.rad().get()));

    // growth bounds are mandatory for certified tails
    CHECK_THROWS_WITH_AS((void)eval_at(exp_spec(false), fe(1), 64),
                         doctest::Contains("tail-bound-unavailable"), error);
    // radix evaluation is confined to the open unit disk
    CHECK_THROWS_WITH_AS((void)eval_at(lacunary_spec(), fe(3, 2), 64),
                         doctest::Contains("outside-unit-disk"), error);

    // heuristic mode still lands on the value, just without a certificate
    ComplexBall h1 = eval_at(exp_spec(false), fe(1), 64, TailMode::heuristic);
    CHECK(h1.abs_lb() > rq(27182, 10000));
    CHECK(h1.abs_ub() < rq(27183, 10000));
}

TEST_CASE("polynomial values distinguish certified, undetermined, and nonzero") {
    MultiPoly<Integer> pyth =
        ipoly(2, {{{2, 0}, 1}, {{0, 2}, 1}, {{0, 0}, -1}});

    ValueVector trig = make_value_vector({cos_spec(), sin_spec()}, fe(1), 128);
    PolyValue pv = poly_value(pyth, trig);
    CHECK(pv.status == ValueStatus::undetermined_zero);
    CHECK(pv.value.contains_zero());

    // supplying the relation ideal upgrades the verdict
    trig.value_relations = buchberger(
        {fpoly(2, {{{2, 0}, 1}, {{0, 2}, 1}, {{0, 0}, -1}})}, MonomialOrder::grlex);
    CHECK(poly_value(pyth, trig).status == ValueStatus::certified_zero);

    ValueVector ev = make_value_vector({exp_spec()}, fe(1), 128);
    PolyValue px = poly_value(ipoly(1, {{{1}, 1}}), ev);
    CHECK(px.status == ValueStatus::nonzero);
    CHECK(px.value.abs_lb() > rq(5, 2));

    ValueVector third = rational_value_vector(rq(1, 3), 64);
    CHECK(poly_value(ipoly(1, {{{1}, 3}, {{0}, -1}}), third).status ==
          ValueStatus::certified_zero);
    PolyValue pz = poly_value(MultiPoly<Integer>(1), third);
    CHECK(pz.status == ValueStatus::certified_zero);
    CHECK(mpfr_zero_p(pz.value.re().get()));
}

TEST_CASE("value vectors recompute at higher precision") {
    ValueVector ev = make_value_vector({exp_spec()}, fe(1), 64);
    Rational w64 = ev.omega[1].abs_ub() - ev.omega[1].abs_lb();
    ValueVector hi = ev.at_precision(256);
    Rational w256 = hi.omega[1].abs_ub() - hi.omega[1].abs_lb();
    CHECK(w256 < w64);
    CHECK(w256 < rq(1, 1000000000));
    CHECK(hi.precision == 256);
}

TEST_CASE("scanning a rational point pins the fitted constants exactly") {
    ValueVector third = rational_value_vector(rq(1, 3), 64);
    MeasureReport rep = liouville_scan(third, 1, 100);

    // canonical vectors: b in [1,100] for a <= 0, b in [0,100] for a >= 1
    CHECK(rep.total_records == 20200);
    CHECK(rep.zero_records == 33);
    CHECK(rep.zeros.size() == 33);
    for (const auto& z : rep.zeros) {
        CHECK(z.status == ValueStatus::certified_zero);
        REQUIRE(z.coeffs.size() == 2);
        CHECK(z.coeffs[0] >= 1);
        CHECK(z.coeffs[1] == -3 * z.coeffs[0]); // multiples of 1 - 3X
    }

    // min over nonzero values is 1/3, achieved at height 1
    REQUIRE(rep.c1_record.has_value());
    CHECK(rep.c1 == doctest::Approx(1.0 / 3).epsilon(1e-12));
    CHECK(rep.c2 == doctest::Approx(std::log2(3.0)).epsilon(1e-12));
    CHECK(rep.c1_record->height == 1);
    CHECK(rep.c1_record->log2_abs == doctest::Approx(-std::log2(3.0)).epsilon(1e-12));

    // the fitted floor holds for every nonzero record: spot-check via rerun
    MeasureReport again = liouville_scan(third, 1, 100);
    CHECK(again.c1_log2 == rep.c1_log2);
    CHECK(again.c2 == rep.c2);
    CHECK(again.min_exponent == rep.min_exponent);
    CHECK(again.max_exponent == rep.max_exponent);
    CHECK(again.zero_records == rep.zero_records);

    // sequential sink pass agrees with the parallel pass record for record
    size_t seen = 0;
    double worst = 0;
    MeasureReport seq = liouville_scan(third, 1, 100, ScanStrategy::exhaustive, 0,
                                       [&](const ScanRecord& r) {
                                           ++seen;
                                           if (r.status == ValueStatus::nonzero &&
                                               r.log2_abs < worst)
                                               worst = r.log2_abs;
                                       });
    CHECK(seen == rep.total_records);
    CHECK(seq.c1_log2 == rep.c1_log2);
    CHECK(worst == doctest::Approx(-std::log2(3.0)).epsilon(1e-12));
}

TEST_CASE("scanning certified irrational values finds no spurious zeros") {
    ValueVector lac = make_value_vector({lacunary_spec()}, fe(1, 2), 256);
    MeasureReport rep = liouville_scan(lac, 1, 64);
    CHECK(rep.zero_records == 0);
    CHECK(rep.nonzero_records == rep.total_records);
    CHECK(rep.c2 > 0);
    CHECK(rep.c2 < 3);
    MeasureReport again = liouville_scan(lac, 1, 64);
    CHECK(again.c1_log2 == rep.c1_log2);
    CHECK(again.c2 == rep.c2);

    // degree-2 box around e stays bounded away from zero as well
    ValueVector ev = make_value_vector({exp_spec()}, fe(1), 256);
    MeasureReport quad = liouville_scan(ev, 2, 8);
    CHECK(quad.zero_records == 0);
    CHECK(quad.nonzero_records == quad.total_records);
    CHECK(quad.min_exponent < quad.max_exponent);
}

TEST_CASE("dependent values need the relation ideal to certify their zeros") {
    ValueVector trig = make_value_vector({cos_spec(), sin_spec()}, fe(1), 256);
    CHECK_THROWS_WITH_AS((void)liouville_scan(trig, 2, 2),
                         doctest::Contains("precision-insufficient"), error);

    trig.value_relations = buchberger(
        {fpoly(2, {{{2, 0}, 1}, {{0, 2}, 1}, {{0, 0}, -1}})}, MonomialOrder::grlex);
    MeasureReport rep = liouville_scan(trig, 2, 2);
    CHECK(rep.zero_records == 2); // 1 - X1^2 - X2^2 and its double
    for (const auto& z : rep.zeros) {
        CHECK(z.status == ValueStatus::certified_zero);
        CHECK(z.coeffs[0] >= 1);
    }
    MeasureReport again = liouville_scan(trig, 2, 2);
    CHECK(again.zero_records == rep.zero_records);
    CHECK(again.c1_log2 == rep.c1_log2);
}

TEST_CASE("scaling a polynomial never shrinks the exponent statistic here") {
    // regime |P(omega)| >= H(P): P_k = 2k + 2k*X at omega = 1/3 has
    // |P_k| = 8k/3 >= 2k = H(P_k).
    ValueVector third = rational_value_vector(rq(1, 3), 64);
    std::vector<double> exps(65, 2.0);
    (void)liouville_scan(third, 1, 64, ScanStrategy::exhaustive, 0,
                         [&](const ScanRecord& r) {
                             if (r.coeffs[0] >= 2 && r.coeffs[0] == r.coeffs[1] &&
                                 r.coeffs[0] % 2 == 0)
                                 exps[r.coeffs[0] / 2] = r.exponent;
                         });
    for (int k = 2; k <= 32; ++k) {
        CHECK(exps[k] != 2.0);
        CHECK(exps[k] >= exps[1] - 1e-12);
    }
}

TEST_CASE("height schedules estimate the approximation exponent") {
    ValueVector third = rational_value_vector(rq(1, 3), 64);
    WdReport wr = estimate_wd(third, 1, {16, 64, 256, 1024, 4096});
    REQUIRE(wr.raw.size() == 5);
    for (size_t i = 1; i < wr.cumulative.size(); ++i)
        CHECK(wr.cumulative[i] >= wr.cumulative[i - 1]);
    CHECK(wr.estimate == wr.raw.back());
    CHECK(wr.estimate > 0);
    CHECK(wr.estimate < 0.2); // rational point: exponent decays to zero

    // an exactly vanishing combination is excluded rather than fitted
    ValueVector half = rational_value_vector(rq(1, 2), 64);
    WdReport wh = estimate_wd(half, 1, {16, 256, 4096});
    CHECK(wh.zero_records > 0);
    for (const auto& z : wh.zeros) CHECK(z.coeffs[1] == -2 * z.coeffs[0]);
    CHECK(wh.estimate < 0.1);

    ValueVector lac = make_value_vector({lacunary_spec()}, fe(1, 2), 256);
    WdReport wl = estimate_wd(lac, 1, {16, 64, 256});
    CHECK(wl.zero_records == 0);
    CHECK(wl.estimate >= 0.8);
    CHECK(wl.estimate <= 2.5);
    for (size_t i = 1; i < wl.cumulative.size(); ++i)
        CHECK(wl.cumulative[i] >= wl.cumulative[i - 1]);

    CHECK_THROWS_WITH_AS((void)estimate_wd(third, 1, {1, 4}),
                         doctest::Contains("bad-schedule"), error);
    CHECK_THROWS_WITH_AS((void)estimate_wd(third, 1, std::vector<long>{}),
                         doctest::Contains("bad-schedule"), error);
}

TEST_CASE("reference constants evaluate exactly when the root is rational") {
    ReferenceC2 a = reference_c2(1, 1);
    REQUIRE(a.exact.has_value());
    CHECK(*a.exact == rq(4));

    ReferenceC2 b = reference_c2(4, 1);
    REQUIRE(b.exact.has_value());
    CHECK(*b.exact == rq(512));

    // sqrt(2) * 16 * 8 = 181.01933598375616...
    ReferenceC2 c = reference_c2(2, 2, 128);
    CHECK(!c.exact.has_value());
    CHECK(c.ball.abs_lb() > rq(18101, 100));
    CHECK(c.ball.abs_ub() < rq(18102, 100));
    CHECK(c.ball.re_string().find("1.8101933598375616") != std::string::npos);

    CHECK_THROWS_WITH_AS((void)reference_c2(0, 1), doctest::Contains("bad-argument"), error);
}

TEST_CASE("lattice reduction finds short relation candidates") {
    // round-to-nearest with ties upward
    CHECK(round_nearest(rq(7, 2)) == 4);
    CHECK(round_nearest(rq(-7, 2)) == -3);
    CHECK(round_nearest(rq(1, 3)) == 0);
    CHECK(round_nearest(rq(2, 3)) == 1);

    // reduction preserves the lattice determinant and shortens the basis
    Matrix<Integer> B = {{Integer(201), Integer(37)}, {Integer(1799), Integer(331)}};
    Matrix<Integer> R = lll_reduce(B);
    Integer det = R[0][0] * R[1][1] - R[0][1] * R[1][0];
    CHECK(rat_abs(Rational(det)) == 32);
    for (const auto& row : R)
        for (const auto& x : row) CHECK(rat_abs(Rational(x)) <= 40);

    CHECK_THROWS_WITH_AS(
        (void)lll_reduce(Matrix<Integer>{{Integer(1), Integer(2)}, {Integer(2), Integer(4)}}),
        doctest::Contains("degenerate-lattice"), error);

    // candidate generation: with H = 2 the exhaustive box misses 1 - 3X, but
    // the lattice probe proposes it and exact arithmetic certifies it
    ValueVector third = rational_value_vector(rq(1, 3), 64);
    MeasureReport rep = liouville_scan(third, 1, 2, ScanStrategy::lattice);
    CHECK(rep.lattice_candidates >= 1);
    REQUIRE(rep.zero_records >= 1);
    bool found = false;
    for (const auto& z : rep.zeros)
        if (z.coeffs == std::vector<long>{1, -3} && z.status == ValueStatus::certified_zero)
            found = true;
    CHECK(found);
}
