#include "transcend/relations.hpp"

#include <algorithm>
#include <set>

#include "transcend/errors.hpp"

namespace transcend {

namespace {

// sign of a field element by its first nonzero power-basis coordinate
int lead_sign(const FieldElement& x) {
    for (const Rational& c : x.coords()) {
        int s = sgn(c);
        if (s != 0) return s;
    }
    return 0;
}

bool divides(const Exponents& a, const Exponents& b) {
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

Exponents exp_lcm(const Exponents& a, const Exponents& b) {
    Exponents l(a.size());
    for (size_t i = 0; i < a.size(); ++i) l[i] = std::max(a[i], b[i]);
    return l;
}

Exponents exp_sub(const Exponents& a, const Exponents& b) {
    Exponents l(a.size());
    for (size_t i = 0; i < a.size(); ++i) l[i] = a[i] - b[i];
    return l;
}

Exponents exp_add(const Exponents& a, const Exponents& b) {
    Exponents l(a.size());
    for (size_t i = 0; i < a.size(); ++i) l[i] = a[i] + b[i];
    return l;
}

// leading term (largest monomial in the order) of a nonzero polynomial
std::pair<Exponents, FieldElement> leading_term(const MultiPoly<FieldElement>& p,
                                                MonomialOrder order) {
    const auto& terms = p.terms();
    auto best = terms.begin();
    for (auto it = std::next(terms.begin()); it != terms.end(); ++it)
        if (monomial_less(best->first, it->first, order)) best = it;
    return {best->first, best->second};
}

// graded-lex leading term of a K[z]-coefficient polynomial
const Poly<FieldElement>* grlex_leading_coeff(const MultiPoly<Poly<FieldElement>>& p,
                                              const Exponents** e_out) {
    const auto& terms = p.terms();
    auto best = terms.begin();
    for (auto it = std::next(terms.begin()); it != terms.end(); ++it)
        if (monomial_less(best->first, it->first, MonomialOrder::grlex)) best = it;
    *e_out = &best->first;
    return &best->second;
}

// scale so coordinates are integral with content 1 and the graded-lex leading
// coefficient (lowest z-power first) is positive
MultiPoly<FieldElement> normalize_primitive(const MultiPoly<FieldElement>& p) {
    if (p.is_zero()) return p;
    std::vector<FieldElement> flat;
    for (const auto& [e, c] : p.terms()) flat.push_back(c);
    flat = primitive_scaled(flat);
    MultiPoly<FieldElement> out(p.vars());
    size_t k = 0;
    for (const auto& [e, c] : p.terms()) out.add_term(e, flat[k++]);
    if (lead_sign(leading_term(out, MonomialOrder::grlex).second) < 0)
        out = out.scaled(FieldElement(-1));
    return out;
}

MultiPoly<Poly<FieldElement>> normalize_primitive_polycoeff(
    const MultiPoly<Poly<FieldElement>>& p) {
    if (p.is_zero()) return p;
    std::vector<FieldElement> flat;
    std::vector<size_t> lens;
    for (const auto& [e, c] : p.terms()) {
        lens.push_back(c.coeffs().size());
        for (const FieldElement& x : c.coeffs()) flat.push_back(x);
    }
    flat = primitive_scaled(flat);
    MultiPoly<Poly<FieldElement>> out(p.vars());
    size_t k = 0, ti = 0;
    for (const auto& [e, c] : p.terms()) {
        std::vector<FieldElement> pc(flat.begin() + k, flat.begin() + k + lens[ti]);
        k += lens[ti++];
        out.add_term(e, Poly<FieldElement>(std::move(pc)));
    }
    const Exponents* le = nullptr;
    const Poly<FieldElement>* lc = grlex_leading_coeff(out, &le);
    long v = lc->valuation();
    if (v >= 0 && lead_sign(lc->coeff(static_cast<size_t>(v))) < 0)
        out = out.scaled(Poly<FieldElement>(-1));
    return out;
}

} // namespace

bool monomial_less(const Exponents& a, const Exponents& b, MonomialOrder order) {
    if (order == MonomialOrder::grlex) {
        int da = total_degree(a), db = total_degree(b);
        if (da != db) return da < db;
    }
    // lex with X_1 the largest variable: componentwise comparison
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

RelationBasis relation_kernel(const std::vector<TruncSeries>& g, int D, long M, size_t T,
                              long margin) {
    size_t m = g.size();
    if (m == 0 || D < 1 || M < 0 || margin < 1)
        throw math_error("precondition-violation",
                         "need at least one series, D >= 1, M >= 0, margin >= 1");
    MonomialBasis basis(static_cast<int>(m), D);
    size_t p = basis.size();
    size_t unknowns = p * static_cast<size_t>(M + 1);
    if (T <= unknowns)
        throw precision_error("truncation-too-small",
                              "truncation order must exceed the unknown count " +
                                  std::to_string(unknowns));
    std::vector<TruncSeries> gt;
    gt.reserve(m);
    for (const TruncSeries& gi : g) {
        if (gi.order() < T)
            throw precision_error("truncation-too-small",
                                  "series order is below the requested truncation");
        gt.push_back(gi.truncated(T));
    }
    std::vector<TruncSeries> mono = all_monomials(basis, gt);

    Matrix<FieldElement> A(T, std::vector<FieldElement>(unknowns, FieldElement(0)));
    for (size_t nu = 0; nu < p; ++nu)
        for (long j = 0; j <= M; ++j) {
            size_t col = nu * static_cast<size_t>(M + 1) + static_cast<size_t>(j);
            for (size_t l = static_cast<size_t>(j); l < T; ++l)
                A[l][col] = mono[nu].coeff(l - static_cast<size_t>(j));
        }
    std::vector<std::vector<FieldElement>> kernel = kernel_basis(A, unknowns);

    RelationBasis rb;
    rb.D = D;
    rb.M = M;
    rb.T = T;
    Integer bound = int_pow(Integer(D), static_cast<unsigned long>(m)) * margin * M;
    rb.certified = cmp(Integer(static_cast<unsigned long>(T)), bound) >= 0;
    for (const auto& vec : kernel) {
        MultiPoly<Poly<FieldElement>> gen(static_cast<int>(m));
        for (size_t nu = 0; nu < p; ++nu) {
            auto first = vec.begin() + static_cast<long>(nu * (M + 1));
            std::vector<FieldElement> pc(first, first + (M + 1));
            Poly<FieldElement> cp(std::move(pc));
            if (!cp.is_zero()) gen.add_term(basis.exponent(nu), cp);
        }
        if (!gen.is_zero()) rb.generators.push_back(normalize_primitive_polycoeff(gen));
    }
    return rb;
}

RelationBasis relation_kernel(const std::vector<FunctionSpec>& f, int D, long M, size_t T,
                              long margin) {
    std::vector<TruncSeries> g;
    g.reserve(f.size());
    for (const FunctionSpec& fs : f) g.push_back(extend_series(fs, T));
    return relation_kernel(g, D, M, T, margin);
}

MultiPoly<FieldElement> normal_form(const MultiPoly<FieldElement>& p,
                                    const std::vector<MultiPoly<FieldElement>>& G,
                                    MonomialOrder order) {
    MultiPoly<FieldElement> r(p.vars());
    MultiPoly<FieldElement> h = p;
    while (!h.is_zero()) {
        auto [e, c] = leading_term(h, order);
        bool reduced = false;
        for (const auto& g : G) {
            if (g.is_zero()) continue;
            auto [eg, cg] = leading_term(g, order);
            if (!divides(eg, e)) continue;
            h = h - g.scaled(c * cg.inverse()).shifted(exp_sub(e, eg));
            reduced = true;
            break;
        }
        if (!reduced) {
            r.add_term(e, c);
            h.add_term(e, FieldElement(0) - c);
        }
    }
    return r;
}

std::vector<MultiPoly<FieldElement>> buchberger(
    const std::vector<MultiPoly<FieldElement>>& generators, MonomialOrder order) {
    std::vector<MultiPoly<FieldElement>> G;
    for (const auto& g : generators) {
        if (g.is_zero())
            throw math_error("precondition-violation", "zero generator supplied");
        G.push_back(g);
    }
    if (G.empty()) return G;

    auto spoly = [&](const MultiPoly<FieldElement>& a, const MultiPoly<FieldElement>& b) {
        auto [ea, ca] = leading_term(a, order);
        auto [eb, cb] = leading_term(b, order);
        Exponents l = exp_lcm(ea, eb);
        return a.scaled(ca.inverse()).shifted(exp_sub(l, ea)) -
               b.scaled(cb.inverse()).shifted(exp_sub(l, eb));
    };

    // normal strategy: treat the pair with the smallest leading-term lcm first
    auto pair_less = [&](const std::pair<size_t, size_t>& x,
                         const std::pair<size_t, size_t>& y) {
        Exponents lx = exp_lcm(leading_term(G[x.first], order).first,
                               leading_term(G[x.second], order).first);
        Exponents ly = exp_lcm(leading_term(G[y.first], order).first,
                               leading_term(G[y.second], order).first);
        if (lx != ly) return monomial_less(lx, ly, order);
        return x < y;
    };

    std::set<std::pair<size_t, size_t>> pending;
    for (size_t i = 0; i < G.size(); ++i)
        for (size_t j = i + 1; j < G.size(); ++j) pending.insert({i, j});

    while (!pending.empty()) {
        auto best = *std::min_element(pending.begin(), pending.end(), pair_less);
        pending.erase(best);
        Exponents ea = leading_term(G[best.first], order).first;
        Exponents eb = leading_term(G[best.second], order).first;
        // Buchberger's coprimality criterion: disjoint leading supports reduce to 0
        if (exp_lcm(ea, eb) == exp_add(ea, eb)) continue;
        MultiPoly<FieldElement> rem = normal_form(spoly(G[best.first], G[best.second]), G, order);
        if (rem.is_zero()) continue;
        G.push_back(rem);
        for (size_t k = 0; k + 1 < G.size(); ++k) pending.insert({k, G.size() - 1});
    }

    // minimalize: drop any generator whose leading monomial another one divides
    std::vector<MultiPoly<FieldElement>> minimal;
    for (size_t i = 0; i < G.size(); ++i) {
        Exponents ei = leading_term(G[i], order).first;
        bool redundant = false;
        for (size_t j = 0; j < G.size() && !redundant; ++j) {
            if (i == j) continue;
            Exponents ej = leading_term(G[j], order).first;
            if (divides(ej, ei) && (ej != ei || j < i)) redundant = true;
        }
        if (!redundant) minimal.push_back(G[i]);
    }

    // tail-reduce each generator against the others and normalize monic
    std::vector<MultiPoly<FieldElement>> reduced;
    for (size_t i = 0; i < minimal.size(); ++i) {
        std::vector<MultiPoly<FieldElement>> others;
        for (size_t j = 0; j < minimal.size(); ++j)
            if (j != i) others.push_back(minimal[j]);
        MultiPoly<FieldElement> nf = normal_form(minimal[i], others, order);
        reduced.push_back(nf.scaled(leading_term(nf, order).second.inverse()));
    }
    std::sort(reduced.begin(), reduced.end(),
              [&](const MultiPoly<FieldElement>& a, const MultiPoly<FieldElement>& b) {
                  return monomial_less(leading_term(a, order).first,
                                       leading_term(b, order).first, order);
              });
    return reduced;
}

std::vector<MultiPoly<FieldElement>> specialize(const RelationBasis& rel,
                                                const FieldElement& alpha) {
    std::vector<MultiPoly<FieldElement>> out;
    for (const auto& gen : rel.generators) {
        MultiPoly<FieldElement> s = specialize_z(gen, alpha);
        if (s.is_zero()) continue;
        out.push_back(normalize_primitive(s));
    }
    return out;
}

LinearFormSet linear_forms_from_relations(const std::vector<MultiPoly<FieldElement>>& groebner,
                                          const MonomialBasis& basis) {
    LinearFormSet set;
    int dd = basis.degree_bound();
    for (const auto& q : groebner)
        if (!q.is_zero() && q.degree() > dd)
            throw math_error("degree-bound-too-small",
                             "generator degree exceeds the basis bound");
    for (const auto& q : groebner) {
        if (q.is_zero()) continue;
        int dq = q.degree();
        for (size_t j = 0; j < basis.size(); ++j) {
            const Exponents& nu = basis.exponent(j);
            if (total_degree(nu) + dq > dd) continue;
            set.forms.push_back(psi_linear_form(q.shifted(nu), basis));
        }
    }
    set.rank = set.forms.empty() ? 0 : matrix_rank(set.forms);
    return set;
}

DimensionLedger ledger(const std::vector<FunctionSpec>& f, const MultiPoly<Integer>& P,
                       const std::vector<MultiPoly<FieldElement>>& value_relations,
                       long delta, long d, const Rational& h, int t, size_t kernel_T) {
    if (f.empty() || delta < 1 || d < 1 || t < 1)
        throw math_error("precondition-violation", "need functions, delta, d, t >= 1");
    if (P.is_zero())
        throw math_error("precondition-violation", "P must be nonzero");
    int m = static_cast<int>(f.size());
    long dd = delta * d;
    if (dd > 64)
        throw math_error("precondition-violation", "degree bound too large for the ledger");
    MonomialBasis basis(m, static_cast<int>(dd));

    DimensionLedger led;
    led.m = m;
    led.t = t;
    led.delta = delta;
    led.d = d;
    led.h = h;
    led.p = basis.size();

    // functional relations with z-free coefficients, recomputed at degree dd
    size_t T = kernel_T ? kernel_T : 2 * led.p + 8;
    RelationBasis rb = relation_kernel(f, static_cast<int>(dd), 0, T);
    std::vector<MultiPoly<FieldElement>> fun;
    for (const auto& gen : rb.generators) fun.push_back(specialize_z(gen, FieldElement(0)));
    led.q = linear_forms_from_relations(fun, basis).rank;

    LinearFormSet vf = linear_forms_from_relations(value_relations, basis);
    led.r = vf.rank;

    MultiPoly<FieldElement> Pf(m);
    for (const auto& [e, c] : P.terms()) Pf.add_term(e, FieldElement(Rational(c)));
    if (Pf.degree() > dd)
        throw math_error("degree-bound-too-small", "P does not fit inside the degree bound");

    Matrix<FieldElement> probe = vf.forms;
    probe.push_back(psi_linear_form(Pf, basis));
    if (matrix_rank(probe) == led.r)
        throw math_error("P-in-ideal",
                         "P lies in the span of the value relations at this degree");

    Matrix<FieldElement> span = vf.forms;
    int dp = Pf.degree();
    for (size_t j = 0; j < basis.size(); ++j) {
        const Exponents& nu = basis.exponent(j);
        if (total_degree(nu) + dp > dd) continue;
        span.push_back(psi_linear_form(Pf.shifted(nu), basis));
    }
    led.s = matrix_rank(span);

    led.u = led.s - led.r;
    led.v = led.p - led.s;
    led.w = led.p - led.q;
    if (led.p != led.q + led.w || led.s < led.r || led.p < led.s)
        throw math_error("internal-inconsistency", "ledger identities violated");

    Rational vh = Rational(static_cast<unsigned long>(led.v)) * h;
    led.v_h_below_w = cmp(vh, Rational(static_cast<unsigned long>(led.w))) < 0;
    Integer dt = int_pow(Integer(delta), static_cast<unsigned long>(t)) *
                 int_pow(Integer(d), static_cast<unsigned long>(t));
    led.u_over_dt = Rational(Integer(static_cast<unsigned long>(led.u))) / Rational(dt);
    return led;
}

} // namespace transcend
