#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "transcend/auxform.hpp"

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

FunctionSpec exp_spec() {
    FunctionSpec fs;
    fs.kind = SystemKind::differential;
    fs.coeffs = {rpoly({-1}), rpoly({1})};
    fs.initial = {fe(1)};
    return fs;
}

FunctionSpec const_one_spec() {
    FunctionSpec fs;
    fs.kind = SystemKind::differential;
    fs.coeffs = {rpoly({0}), rpoly({1})}; // f' = 0
    fs.initial = {fe(1)};
    return fs;
}

FunctionSpec cos_spec() {
    FunctionSpec fs;
    fs.kind = SystemKind::differential;
    fs.coeffs = {rpoly({1}), rpoly({0}), rpoly({1})};
    fs.initial = {fe(1), fe(0)};
    return fs;
}

FunctionSpec sin_spec() {
    FunctionSpec fs = cos_spec();
    fs.initial = {fe(0), fe(1)};
    return fs;
}

FunctionSpec thue_morse_spec() {
    FunctionSpec fs;
    fs.kind = SystemKind::mahler;
    fs.q = 2;
    fs.coeffs = {rpoly({-1}), rpoly({1, -1})};
    fs.initial = {fe(1)};
    return fs;
}

FunctionSpec fredholm_spec() {
    FunctionSpec fs;
    fs.kind = SystemKind::mahler;
    fs.q = 2;
    fs.coeffs = {rpoly({0, 1}), rpoly({-1, -1}), rpoly({1})};
    fs.initial = {fe(0), fe(1)};
    return fs;
}

// Y' = [[0,-1],[1,0]] Y for Y = (cos, sin)
LinearSystemSpec rotation_system() {
    LinearSystemSpec sys;
    sys.kind = SystemKind::differential;
    sys.size = 2;
    sys.N = {{rpoly({0}), rpoly({-1})}, {rpoly({1}), rpoly({0})}};
    sys.T = rpoly({1});
    return sys;
}

// Same system with N and T both scaled by z, to exercise a nontrivial T.
LinearSystemSpec scaled_rotation_system() {
    LinearSystemSpec sys = rotation_system();
    Poly<FieldElement> z = rpoly({0, 1});
    for (auto& row : sys.N)
        for (auto& entry : row) entry = entry * z;
    sys.T = z;
    return sys;
}

LinearSystemSpec poly_mahler_system() {
    LinearSystemSpec sys;
    sys.kind = SystemKind::mahler;
    sys.q = 2;
    sys.size = 2;
    sys.N = {{rpoly({1}), rpoly({0})}, {rpoly({0, -1}), rpoly({1})}};
    sys.T = rpoly({1});
    return sys;
}

AuxiliaryForm make_form(std::vector<Poly<FieldElement>> ps) {
    AuxiliaryForm f;
    f.coeffs = std::move(ps);
    for (const auto& p : f.coeffs)
        f.z_degree = std::max(f.z_degree, static_cast<long>(p.deg()));
    return f;
}

AuxiliaryForm random_form(std::mt19937_64& rng, size_t dim, long deg) {
    for (;;) {
        std::vector<Poly<FieldElement>> ps;
        bool nonzero = false;
        for (size_t i = 0; i < dim; ++i) {
            std::vector<FieldElement> c(deg + 1);
            for (long j = 0; j <= deg; ++j) {
                long v = static_cast<long>(rng() % 11) - 5;
                c[j] = fe(v);
                nonzero = nonzero || v != 0;
            }
            ps.emplace_back(std::move(c));
        }
        if (nonzero) return make_form(std::move(ps));
    }
}

} // namespace

TEST_CASE("build_auxiliary: Pade pair for exp") {
    std::vector<TruncSeries> g{TruncSeries::one(12), exp_series(12)};
    AuxiliaryForm form = build_auxiliary(g, 2, 5);
    REQUIRE(form.coeffs.size() == 2);

    // proportional to (-(12+6z+z^2), 12-6z+z^2)
    Poly<FieldElement> R1 = rpoly({-12, -6, -1});
    Poly<FieldElement> R2 = rpoly({12, -6, 1});
    CHECK(form.coeffs[0] * R2 == form.coeffs[1] * R1);
    CHECK_FALSE(form.coeffs[0].is_zero());

    auto val = eval_form(form, g).valuation();
    REQUIRE(val.has_value());
    CHECK(*val == 5);

    // coefficients are integral with content 1
    CHECK(form_height(form) == rq(12));
}

TEST_CASE("build_auxiliary: degenerate and trig instances") {
    TruncSeries zs(8);
    zs.set_coeff(1, fe(1));
    std::vector<TruncSeries> g{TruncSeries::one(8), zs};
    AuxiliaryForm form = build_auxiliary(g, 1, 2);
    auto val = eval_form(form, g).valuation();
    CHECK((!val.has_value() || *val >= 2));

    std::vector<TruncSeries> trig{cos_series(10), sin_series(10)};
    AuxiliaryForm tform = build_auxiliary(trig, 1, 3);
    auto tval = eval_form(tform, trig).valuation();
    REQUIRE(tval.has_value());
    CHECK(*tval >= 3);

    CHECK_THROWS_WITH_AS((void)build_auxiliary(trig, 1, 4),
                         doctest::Contains("precondition-violation"), error);
    std::vector<TruncSeries> shallow{cos_series(3), sin_series(3)};
    CHECK_THROWS_WITH_AS((void)build_auxiliary(shallow, 1, 3),
                         doctest::Contains("precondition-violation"), error);
}

TEST_CASE("theta_step: pinned examples") {
    LinearSystemSpec e = companion(exp_spec());
    AuxiliaryForm zf = make_form({rpoly({0, 1})});
    AuxiliaryForm stepped = theta_step(zf, e);
    CHECK(stepped.coeffs[0] == rpoly({1, 1})); // z -> 1 + z
    CHECK(stepped.generation == 1);

    // On Y = (cos, sin) the derivative of Y1 is -Y2.
    AuxiliaryForm y1 = make_form({rpoly({1}), rpoly({0})});
    AuxiliaryForm rot = theta_step(y1, rotation_system());
    CHECK(rot.coeffs[0] == rpoly({0}));
    CHECK(rot.coeffs[1] == rpoly({-1}));

    // With N and T scaled by z the operator computes T * (L(z, Y))'.
    AuxiliaryForm zy1 = make_form({rpoly({0, 1}), rpoly({0})});
    AuxiliaryForm srot = theta_step(zy1, scaled_rotation_system());
    CHECK(srot.coeffs[0] == rpoly({0, 1}));      // z Y1
    CHECK(srot.coeffs[1] == rpoly({0, 0, -1}));  // - z^2 Y2
}

TEST_CASE("theta_step drops the Pade valuation by exactly one") {
    std::vector<TruncSeries> g{TruncSeries::one(12), exp_series(12)};
    AuxiliaryForm form = build_auxiliary(g, 2, 5);
    LinearSystemSpec sys = direct_sum({companion(const_one_spec()), companion(exp_spec())});
    AuxiliaryForm stepped = theta_step(form, sys);
    auto val = eval_form(stepped, g).valuation();
    REQUIRE(val.has_value());
    CHECK(*val == 4);
}

TEST_CASE("theta_step identity on random forms") {
    std::mt19937_64 rng(2024);
    // exp companion with solution vector (exp)
    FunctionSpec efs = exp_spec();
    LinearSystemSpec esys = companion(efs);
    std::vector<TruncSeries> eg = solution_vector(efs, 16);
    // cos companion with solution vector (cos, -sin)
    FunctionSpec cfs = cos_spec();
    LinearSystemSpec csys = companion(cfs);
    std::vector<TruncSeries> cg = solution_vector(cfs, 16);
    for (int i = 0; i < 25; ++i) {
        AuxiliaryForm L1 = random_form(rng, 1, 4);
        TruncSeries lhs = eval_form(theta_step(L1, esys), eg);
        TruncSeries rhs = eval_form(L1, eg).derivative().mul_poly(esys.T);
        CHECK(lhs.truncated(rhs.order()) == rhs);

        AuxiliaryForm L2 = random_form(rng, 2, 4);
        TruncSeries lhs2 = eval_form(theta_step(L2, csys), cg);
        TruncSeries rhs2 = eval_form(L2, cg).derivative().mul_poly(csys.T);
        CHECK(lhs2.truncated(rhs2.order()) == rhs2);
    }

    LinearSystemSpec ssys = scaled_rotation_system();
    std::vector<TruncSeries> sg{cos_series(16), sin_series(16)};
    for (int i = 0; i < 10; ++i) {
        AuxiliaryForm L = random_form(rng, 2, 4);
        TruncSeries lhs = eval_form(theta_step(L, ssys), sg);
        TruncSeries rhs = eval_form(L, sg).derivative().mul_poly(ssys.T);
        CHECK(lhs.truncated(rhs.order()) == rhs);
    }
}

TEST_CASE("mahler_step: pinned examples") {
    LinearSystemSpec sys = poly_mahler_system();
    AuxiliaryForm y2 = make_form({rpoly({0}), rpoly({1})});
    AuxiliaryForm s2 = mahler_step(y2, sys);
    CHECK(s2.coeffs[0] == rpoly({0, -1})); // -z Y1
    CHECK(s2.coeffs[1] == rpoly({1}));     // + Y2
    CHECK(s2.clearing_d == 0);             // T = 1 divides everything

    AuxiliaryForm y1 = make_form({rpoly({1}), rpoly({0})});
    AuxiliaryForm s1 = mahler_step(y1, sys);
    CHECK(s1.coeffs[0] == rpoly({1}));
    CHECK(s1.coeffs[1] == rpoly({0}));

    LinearSystemSpec tm = companion(thue_morse_spec());
    AuxiliaryForm f1 = make_form({rpoly({1})});
    AuxiliaryForm st = mahler_step(f1, tm);
    CHECK(st.coeffs[0] == rpoly({1}));
    CHECK(st.clearing_d == 1); // T = 1 - z does not divide the contraction
}

TEST_CASE("mahler_step identity on random forms") {
    std::mt19937_64 rng(77);
    for (auto& fs : {thue_morse_spec(), fredholm_spec()}) {
        LinearSystemSpec sys = companion(fs);
        size_t ord = 24;
        std::vector<TruncSeries> Y = solution_vector(fs, ord);
        for (int i = 0; i < 25; ++i) {
            AuxiliaryForm L = random_form(rng, sys.size, 3);
            AuxiliaryForm Lnext = mahler_step(L, sys);
            TruncSeries lhs = eval_form(Lnext, Y);
            TruncSeries rhs(ord);
            for (size_t k = 0; k < sys.size; ++k)
                rhs = rhs + Y[k].substitute_zpow(sys.q, ord).mul_poly(
                                L.coeffs[k].compose_zpow(sys.q));
            if (Lnext.clearing_d == 1) rhs = rhs.mul_poly(sys.T);
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("mahler_step multiplies valuation by q when T(0) != 0") {
    FunctionSpec fs = thue_morse_spec();
    LinearSystemSpec sys = companion(fs);
    std::vector<TruncSeries> Y = solution_vector(fs, 40);
    AuxiliaryForm form = build_auxiliary(Y, 2, 2);
    auto v0 = eval_form(form, Y).valuation();
    REQUIRE(v0.has_value());
    AuxiliaryForm f1 = mahler_step(form, sys);
    auto v1 = eval_form(f1, Y).valuation();
    REQUIRE(v1.has_value());
    CHECK(*v1 == 2 * *v0);
    AuxiliaryForm f2 = mahler_step(f1, sys);
    auto v2 = eval_form(f2, Y).valuation();
    REQUIRE(v2.has_value());
    CHECK(*v2 == 4 * *v0);
}

TEST_CASE("check_multiplicity: trig pair is deterministic and bounded") {
    std::vector<FunctionSpec> f{cos_spec(), sin_spec()};
    MultiplicityReport rep = check_multiplicity(f, 1, 50, 2, 2, 42, 256);
    CHECK(rep.valuations.size() == 50);
    CHECK(rep.max_valuation >= 0);
    for (long v : rep.valuations) CHECK(v >= 0);

    MultiplicityReport rep2 = check_multiplicity(f, 1, 50, 2, 2, 42, 256);
    CHECK(rep.valuations == rep2.valuations);
    CHECK(rep.max_ratio == rep2.max_ratio);

    MultiplicityReport other = check_multiplicity(f, 1, 50, 2, 2, 43, 256);
    CHECK(other.valuations.size() == 50);
}

TEST_CASE("check_multiplicity: constant function and Mahler instance") {
    std::vector<FunctionSpec> ones{const_one_spec()};
    MultiplicityReport rep = check_multiplicity(ones, 1, 30, 2, 2, 7, 64);
    // a nonzero polynomial in z of degree <= M evaluated at X = 1
    for (long v : rep.valuations) CHECK(v <= 2);

    std::vector<FunctionSpec> fred{fredholm_spec()};
    MultiplicityReport mrep = check_multiplicity(fred, 1, 50, 3, 3, 11, 256);
    CHECK(mrep.max_valuation >= 0);
    CHECK(mrep.valuations.size() == 50);
}
