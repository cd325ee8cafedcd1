// Acceptance gate: one pass/fail line per criterion, timed, with every
// tolerance pinned in code.  Exits nonzero if any criterion fails.
//
// The shipped artifacts under specs/ are loaded through the same JSON reader
// the command-line driver uses, so the criteria exercise exactly what ships.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "transcend/auxform.hpp"
#include "transcend/ball.hpp"
#include "transcend/measure.hpp"
#include "transcend/monomial.hpp"
#include "transcend/numberfield.hpp"
#include "transcend/relations.hpp"
#include "transcend/specfile.hpp"
#include "transcend/systems.hpp"

using namespace transcend;

#ifndef ACCEPTANCE_SPEC_DIR
#define ACCEPTANCE_SPEC_DIR "specs"
#endif

namespace {

struct check_failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

#define ACC_CHECK(cond)                                                                  \
    do {                                                                                 \
        if (!(cond))                                                                     \
            throw check_failure(std::string("line ") + std::to_string(__LINE__) + ": " + \
                                #cond);                                                  \
    } while (0)

std::string spec_path(const char* name) {
    return std::string(ACCEPTANCE_SPEC_DIR) + "/" + name;
}

// Every shipped spec file, loaded once.
const std::vector<SpecFile>& shipped_specs() {
    static const std::vector<SpecFile> all = [] {
        std::vector<SpecFile> v;
        for (const char* name : {"exp.json", "trig.json", "trig_identity.json", "fredholm.json",
                                 "thue_morse.json", "mahler_pole.json", "quadratic.json"})
            v.push_back(load_spec(spec_path(name)));
        return v;
    }();
    return all;
}

SpecFile find_spec(const char* name) { return load_spec(spec_path(name)); }

Poly<FieldElement> rpoly(std::vector<long> cs) {
    std::vector<FieldElement> v;
    for (long c : cs) v.emplace_back(Rational(c));
    return Poly<FieldElement>(v);
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
                c[j] = FieldElement(Rational(v));
                nonzero = nonzero || v != 0;
            }
            ps.emplace_back(std::move(c));
        }
        if (nonzero) return make_form(std::move(ps));
    }
}

// ---------------------------------------------------------------------------
// criterion 1: the [2/2] Pade instance for exp
// ---------------------------------------------------------------------------

void criterion_pade() {
    SpecFile spec = find_spec("exp.json");
    std::vector<TruncSeries> g{TruncSeries::one(6), extend_series(spec.functions[0], 6)};
    AuxiliaryForm form = build_auxiliary(g, 2, 5);
    auto val = series_valuation(eval_form(form, g));
    ACC_CHECK(val.has_value());
    ACC_CHECK(*val == 5);
    // proportional to (-(12 + 6z + z^2), 12 - 6z + z^2): cross products agree
    Poly<FieldElement> t0 = rpoly({-12, -6, -1});
    Poly<FieldElement> t1 = rpoly({12, -6, 1});
    ACC_CHECK(form.coeffs.size() == 2);
    ACC_CHECK(!form.coeffs[0].is_zero());
    ACC_CHECK(form.coeffs[0] * t1 == form.coeffs[1] * t0);
}

// ---------------------------------------------------------------------------
// criterion 2: dimension ledger for cos/sin at degree 2 and 4
// ---------------------------------------------------------------------------

MultiPoly<Integer> probe_x1(size_t m) {
    MultiPoly<Integer> P(static_cast<int>(m));
    Exponents e(m, 0);
    e[0] = 1;
    P.add_term(e, Integer(1));
    return P;
}

void criterion_ledger() {
    SpecFile trig = find_spec("trig.json");
    MultiPoly<Integer> P = probe_x1(trig.functions.size());
    DimensionLedger a =
        ledger(trig.functions, P, trig.value_relations, 2, 1, Rational(1), 1);
    ACC_CHECK(a.p == 6);
    ACC_CHECK(a.q == 1);
    ACC_CHECK(a.r == 1);
    ACC_CHECK(a.s == 4);
    ACC_CHECK(a.u == 3);
    ACC_CHECK(a.v == 2);
    ACC_CHECK(a.w == 5);
    ACC_CHECK(a.v_h_below_w);
    DimensionLedger b =
        ledger(trig.functions, P, trig.value_relations, 4, 1, Rational(1), 1);
    ACC_CHECK(b.p == 15);
    ACC_CHECK(b.q == 6);
    ACC_CHECK(b.w == 9);
}

// ---------------------------------------------------------------------------
// criterion 3: operator identities on random forms for every shipped system
// ---------------------------------------------------------------------------

void criterion_operators() {
    std::mt19937_64 rng(6021023);
    const size_t ord = 24;
    for (const SpecFile& spec : shipped_specs()) {
        for (const FunctionSpec& fs : spec.functions) {
            LinearSystemSpec sys = companion(fs);
            std::vector<TruncSeries> Y = solution_vector(fs, ord);
            for (int i = 0; i < 100; ++i) {
                AuxiliaryForm L = random_form(rng, sys.size, 3);
                if (sys.kind == SystemKind::differential) {
                    // Theta(L)(z, g) == T * d/dz L(z, g)
                    TruncSeries lhs = eval_form(theta_step(L, sys), Y);
                    TruncSeries rhs = eval_form(L, Y).derivative().mul_poly(sys.T);
                    ACC_CHECK(lhs.truncated(rhs.order()) == rhs);
                } else {
                    // R_{k+1}(z, g) == T^d * R_k(z^q, g(z^q))
                    AuxiliaryForm Lnext = mahler_step(L, sys);
                    TruncSeries lhs = eval_form(Lnext, Y);
                    TruncSeries rhs(ord);
                    for (size_t k = 0; k < sys.size; ++k)
                        rhs = rhs + Y[k].substitute_zpow(sys.q, ord).mul_poly(
                                        L.coeffs[k].compose_zpow(sys.q));
                    for (long c = 0; c < Lnext.clearing_d; ++c) rhs = rhs.mul_poly(sys.T);
                    ACC_CHECK(lhs == rhs);
                }
            }
        }
    }
}

// ---------------------------------------------------------------------------
// criterion 4: companion/direct-sum soundness on shipped specs
// ---------------------------------------------------------------------------

void criterion_companion() {
    const size_t ord = 64;
    for (const SpecFile& spec : shipped_specs()) {
        for (const FunctionSpec& fs : spec.functions) {
            LinearSystemSpec sys = companion(fs);
            std::vector<TruncSeries> Y = solution_vector(fs, ord);
            ACC_CHECK(Y.size() == sys.size);
            for (size_t i = 0; i < sys.size; ++i) {
                TruncSeries rhs(ord);
                for (size_t j = 0; j < sys.size; ++j) rhs = rhs + Y[j].mul_poly(sys.N[i][j]);
                if (sys.kind == SystemKind::differential) {
                    TruncSeries lhs = Y[i].derivative().mul_poly(sys.T);
                    ACC_CHECK(lhs == rhs.truncated(ord - 1));
                } else {
                    TruncSeries lhs = Y[i].substitute_zpow(sys.q, ord).mul_poly(sys.T);
                    ACC_CHECK(lhs == rhs);
                }
            }
        }
    }

    // direct-sum regularity == conjunction of summand regularity
    std::vector<LinearSystemSpec> diff_blocks, mahler_blocks;
    for (const char* name : {"exp.json", "trig.json"})
        for (const FunctionSpec& fs : find_spec(name).functions)
            diff_blocks.push_back(companion(fs));
    for (const char* name : {"fredholm.json", "thue_morse.json", "mahler_pole.json"})
        for (const FunctionSpec& fs : find_spec(name).functions)
            mahler_blocks.push_back(companion(fs));
    LinearSystemSpec diff_sum = direct_sum(diff_blocks);
    LinearSystemSpec mahler_sum = direct_sum(mahler_blocks);

    std::mt19937_64 rng(401);
    for (int i = 0; i < 20; ++i) {
        long den = 2 + static_cast<long>(rng() % 7);
        long num = 1 + static_cast<long>(rng() % (den - 1));
        long sign = (rng() % 2 == 0) ? 1 : -1;
        FieldElement alpha{Rational(sign * num, den)};

        bool all_diff = true;
        for (const auto& b : diff_blocks) all_diff = all_diff && is_regular(b, alpha).regular;
        ACC_CHECK(is_regular(diff_sum, alpha).regular == all_diff);

        bool all_mahler = true;
        for (const auto& b : mahler_blocks)
            all_mahler = all_mahler && is_regular(b, alpha).regular;
        ACC_CHECK(is_regular(mahler_sum, alpha).regular == all_mahler);
    }
}

// ---------------------------------------------------------------------------
// criterion 5: regularity decisions with pinned witnesses
// ---------------------------------------------------------------------------

void criterion_regularity() {
    SpecFile fred = find_spec("fredholm.json");
    RegularityReport fr = is_regular(companion(fred.functions[0]), fred.alpha);
    ACC_CHECK(fr.regular);

    SpecFile pole = find_spec("mahler_pole.json");
    LinearSystemSpec psys = companion(pole.functions[0]);
    ACC_CHECK(psys.size == 1);
    ACC_CHECK(psys.N[0][0] == rpoly({1}));
    ACC_CHECK(psys.T == Poly<FieldElement>({FieldElement(Rational(-1, 2)),
                                            FieldElement(Rational(1))}));
    RegularityReport bad = is_regular(psys, FieldElement(Rational(1, 2)));
    ACC_CHECK(!bad.regular);
    ACC_CHECK(bad.witness_n == 0);
    RegularityReport good = is_regular(psys, FieldElement(Rational(1, 4)));
    ACC_CHECK(good.regular);
    ACC_CHECK(good.cutoff_n == 1);
}

// ---------------------------------------------------------------------------
// criterion 6: multiplicity statistics are finite and rerun-identical
// ---------------------------------------------------------------------------

void criterion_multiplicity() {
    SpecFile trig = find_spec("trig.json");
    for (long M = 1; M <= 3; ++M)
        for (long N = 1; N <= 3; ++N) {
            unsigned long long seed = 0xACC0ULL + static_cast<unsigned long long>(10 * M + N);
            // a throw of "truncation-too-small" here means the sentinel was hit
            MultiplicityReport r1 = check_multiplicity(trig.functions, 1, 50, M, N, seed, 256);
            ACC_CHECK(r1.valuations.size() == 50);
            for (long v : r1.valuations) ACC_CHECK(v >= 0);
            ACC_CHECK(r1.max_valuation >= 0);
            MultiplicityReport r2 = check_multiplicity(trig.functions, 1, 50, M, N, seed, 256);
            ACC_CHECK(r1.max_ratio == r2.max_ratio);
            ACC_CHECK(r1.valuations == r2.valuations);
        }
}

// ---------------------------------------------------------------------------
// criterion 7: order-2 differences of w(delta*d) vanish from degree 4 on
// ---------------------------------------------------------------------------

void criterion_hilbert_growth() {
    SpecFile trig = find_spec("trig.json");
    MultiPoly<Integer> P = probe_x1(trig.functions.size());
    std::vector<long> w;
    for (long dd = 2; dd <= 7; ++dd)
        w.push_back(static_cast<long>(
            ledger(trig.functions, P, trig.value_relations, dd, 1, Rational(1), 1).w));
    // second difference at dd: w(dd+2) - 2 w(dd+1) + w(dd); indices start at dd=2
    for (long dd = 4; dd <= 5; ++dd) {
        size_t i = static_cast<size_t>(dd - 2);
        long second = w[i + 2] - 2 * w[i + 1] + w[i];
        ACC_CHECK(second == 0);
    }
}

// ---------------------------------------------------------------------------
// criterion 8: exhaustive scan of the lacunary value at height 4096
// ---------------------------------------------------------------------------

std::string scan_fingerprint(const MeasureReport& r) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "%zu/%zu/%zu|%.17g|%.17g|%.17g|%.17g", r.total_records,
                  r.nonzero_records, r.zero_records, r.c1_log2, r.c2, r.min_exponent,
                  r.max_exponent);
    return buf;
}

void criterion_scan() {
    SpecFile fred = find_spec("fredholm.json");
    ValueVector v256 = make_value_vector(fred.functions, fred.alpha, 256);
    MeasureReport r1 = liouville_scan(v256, 1, 4096);
    for (const auto& z : r1.zeros) ACC_CHECK(z.status != ValueStatus::undetermined_zero);
    ACC_CHECK(std::isfinite(r1.c2));
    ACC_CHECK(r1.c2 > 0.0);
    ACC_CHECK(r1.total_records == 33562624u);

    MeasureReport r2 = liouville_scan(v256, 1, 4096);
    ACC_CHECK(scan_fingerprint(r1) == scan_fingerprint(r2));

    ValueVector v512 = make_value_vector(fred.functions, fred.alpha, 512);
    MeasureReport r3 = liouville_scan(v512, 1, 4096);
    ACC_CHECK(std::fabs(r3.c2 - r1.c2) < 0.01 * std::fabs(r1.c2));
}

// ---------------------------------------------------------------------------
// criterion 9: closed-form reference constant
// ---------------------------------------------------------------------------

void criterion_reference() {
    ReferenceC2 a = reference_c2(1, 1);
    ACC_CHECK(a.exact.has_value());
    ACC_CHECK(*a.exact == Rational(4));
    ReferenceC2 b = reference_c2(4, 1);
    ACC_CHECK(b.exact.has_value());
    ACC_CHECK(*b.exact == Rational(512));
}

// ---------------------------------------------------------------------------
// criterion 10: Buchberger output closed under generator/S-poly reduction
// ---------------------------------------------------------------------------

MultiPoly<FieldElement> mp2(std::vector<std::pair<Exponents, long>> terms) {
    MultiPoly<FieldElement> p(2);
    for (auto& [e, c] : terms) p.add_term(e, FieldElement(Rational(c)));
    return p;
}

Exponents leading_exps(const MultiPoly<FieldElement>& p, MonomialOrder ord) {
    Exponents best;
    bool have = false;
    for (const auto& [e, c] : p.terms())
        if (!have || monomial_less(best, e, ord)) {
            best = e;
            have = true;
        }
    return best;
}

void check_groebner_closure(const std::vector<MultiPoly<FieldElement>>& gens,
                            MonomialOrder ord) {
    auto gb = buchberger(gens, ord);
    for (const auto& g : gens) ACC_CHECK(normal_form(g, gb, ord).is_zero());
    for (size_t i = 0; i < gb.size(); ++i)
        for (size_t j = i + 1; j < gb.size(); ++j) {
            Exponents ei = leading_exps(gb[i], ord), ej = leading_exps(gb[j], ord);
            Exponents l(ei.size()), si(ei.size()), sj(ei.size());
            for (size_t k = 0; k < l.size(); ++k) {
                l[k] = std::max(ei[k], ej[k]);
                si[k] = l[k] - ei[k];
                sj[k] = l[k] - ej[k];
            }
            MultiPoly<FieldElement> s = gb[i].shifted(si).scaled(gb[i].coeff(ei).inverse()) -
                                        gb[j].shifted(sj).scaled(gb[j].coeff(ej).inverse());
            ACC_CHECK(normal_form(s, gb, ord).is_zero());
        }
}

void criterion_groebner() {
    // the three shipped ideals
    MultiPoly<FieldElement> pyth = mp2({{{2, 0}, 1}, {{0, 2}, 1}, {{0, 0}, -1}});
    check_groebner_closure({pyth}, MonomialOrder::grlex);
    check_groebner_closure({mp2({{{1, 0}, 1}, {{0, 1}, -1}}), mp2({{{0, 2}, 1}, {{0, 0}, -1}})},
                           MonomialOrder::lex);
    check_groebner_closure({mp2({{{2, 0}, 1}}), mp2({{{1, 1}, 1}})}, MonomialOrder::grlex);
}

// ---------------------------------------------------------------------------

struct Criterion {
    int id;
    const char* label;
    double budget_seconds; // 0 = untimed
    std::function<void()> run;
};

} // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "Pade reproduction: exp [2/2] form, valuation 5", 1.0, criterion_pade},
        {2, "ledger reproduction: cos/sin at degree 2 and 4", 5.0, criterion_ledger},
        {3, "operator identities on 100 random forms per shipped system", 30.0,
         criterion_operators},
        {4, "companion/direct-sum soundness on shipped specs", 0.0, criterion_companion},
        {5, "regularity decisions with pinned witnesses", 0.0, criterion_regularity},
        {6, "multiplicity statistics finite and rerun-identical", 60.0, criterion_multiplicity},
        {7, "order-2 differences of w vanish from degree 4 on", 0.0, criterion_hilbert_growth},
        {8, "exhaustive scan at height 4096: certified, stable, deterministic", 120.0,
         criterion_scan},
        {9, "reference constant: exact values at (1,1) and (4,1)", 0.0, criterion_reference},
        {10, "Buchberger closure on the three shipped ideals", 1.0, criterion_groebner},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        auto t0 = std::chrono::steady_clock::now();
        std::string verdict = "PASS";
        std::string detail;
        try {
            c.run();
        } catch (const std::exception& e) {
            verdict = "FAIL";
            detail = e.what();
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (verdict == "PASS" && c.budget_seconds > 0 && secs >= c.budget_seconds) {
            verdict = "FAIL";
            detail = "time budget exceeded";
        }
        if (verdict == "FAIL") ++failures;
        std::string budget;
        if (c.budget_seconds > 0) {
            char b[32];
            std::snprintf(b, sizeof b, " / budget %.0f s", c.budget_seconds);
            budget = b;
        }
        std::printf("[%s] criterion %2d: %s (%.2f s%s)%s%s\n", verdict.c_str(), c.id, c.label,
                    secs, budget.c_str(), detail.empty() ? "" : " -- ", detail.c_str());
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
                criteria.size());
    return failures == 0 ? 0 : 1;
}
