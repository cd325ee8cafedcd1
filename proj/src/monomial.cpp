#include "transcend/monomial.hpp"

namespace transcend {

Integer basis_size(int m, int D) {
    if (m < 1 || D < 0) throw math_error("invalid-dimension", "need m >= 1, D >= 0");
    return binomial(static_cast<unsigned long>(D + m), static_cast<unsigned long>(m));
}

size_t basis_size_ul(int m, int D) {
    Integer p = basis_size(m, D);
    if (!p.fits_ulong_p())
        throw math_error("invalid-dimension", "monomial basis too large");
    return p.get_ui();
}

namespace {

// exponent tuples of total degree exactly d, X_1-heavy first
void enumerate_degree(int m, int d, Exponents& cur, std::vector<Exponents>& out) {
    if (m == 1) {
        cur.push_back(d);
        out.push_back(cur);
        cur.pop_back();
        return;
    }
    for (int e = d; e >= 0; --e) {
        cur.push_back(e);
        enumerate_degree(m - 1, d - e, cur, out);
        cur.pop_back();
    }
}

} // namespace

MonomialBasis::MonomialBasis(int m, int D) : m_(m), D_(D) {
    size_t p = basis_size_ul(m, D);
    exps_.reserve(p);
    for (int d = 0; d <= D; ++d) {
        Exponents cur;
        enumerate_degree(m, d, cur, exps_);
    }
    for (size_t i = 0; i < exps_.size(); ++i) index_.emplace(exps_[i], i);
}

const Exponents& MonomialBasis::exponent(size_t i) const {
    if (i >= exps_.size()) throw math_error("invalid-index", "monomial index out of range");
    return exps_[i];
}

size_t MonomialBasis::index_of(const Exponents& mu) const {
    auto it = index_.find(mu);
    if (it == index_.end())
        throw math_error("degree-bound-too-small", "exponent tuple outside the basis");
    return it->second;
}

bool MonomialBasis::contains(const Exponents& mu) const {
    return index_.find(mu) != index_.end();
}

size_t MonomialBasis::degree_start(int d) const {
    if (d <= 0) return 0;
    return basis_size_ul(m_, d - 1);
}

TruncSeries monomial_eval(const MonomialBasis& basis, const std::vector<TruncSeries>& f,
                          const Exponents& mu) {
    if (static_cast<int>(f.size()) != basis.vars())
        throw math_error("dimension-mismatch", "function count does not match basis arity");
    if (!basis.contains(mu))
        throw math_error("degree-bound-too-small", "exponent tuple outside the basis");
    size_t order = f.empty() ? 0 : f[0].order();
    for (const TruncSeries& s : f)
        if (s.order() != order)
            throw math_error("truncation-mismatch", "functions must share a truncation order");
    TruncSeries acc = TruncSeries::one(order);
    for (size_t i = 0; i < f.size(); ++i)
        if (mu[i] > 0) acc = acc * f[i].pow(static_cast<unsigned long>(mu[i]));
    return acc;
}

std::vector<TruncSeries> all_monomials(const MonomialBasis& basis,
                                       const std::vector<TruncSeries>& f) {
    if (static_cast<int>(f.size()) != basis.vars())
        throw math_error("dimension-mismatch", "function count does not match basis arity");
    size_t order = f.empty() ? 0 : f[0].order();
    for (const TruncSeries& s : f)
        if (s.order() != order)
            throw math_error("truncation-mismatch", "functions must share a truncation order");
    std::vector<TruncSeries> out;
    out.reserve(basis.size());
    out.push_back(TruncSeries::one(order));
    for (size_t i = 1; i < basis.size(); ++i) {
        const Exponents& e = basis.exponent(i);
        int var = 0;
        while (e[var] == 0) ++var;
        Exponents prev = e;
        --prev[var];
        out.push_back(out[basis.index_of(prev)] * f[static_cast<size_t>(var)]);
    }
    return out;
}

TruncSeries eval_series(const MultiPoly<FieldElement>& P, const std::vector<TruncSeries>& f) {
    size_t order = f.empty() ? 0 : f[0].order();
    TruncSeries acc(order);
    for (const auto& [e, c] : P.terms()) {
        TruncSeries t = TruncSeries::one(order);
        for (size_t i = 0; i < f.size(); ++i)
            if (e[i] > 0) t = t * f[i].pow(static_cast<unsigned long>(e[i]));
        acc = acc + t.scaled(c);
    }
    return acc;
}

TruncSeries eval_series(const MultiPoly<Poly<FieldElement>>& P,
                        const std::vector<TruncSeries>& f) {
    size_t order = f.empty() ? 0 : f[0].order();
    TruncSeries acc(order);
    for (const auto& [e, c] : P.terms()) {
        TruncSeries t = TruncSeries::one(order);
        for (size_t i = 0; i < f.size(); ++i)
            if (e[i] > 0) t = t * f[i].pow(static_cast<unsigned long>(e[i]));
        acc = acc + t.mul_poly(c);
    }
    return acc;
}

FieldElement eval_field(const MultiPoly<FieldElement>& P, const std::vector<FieldElement>& x) {
    if (static_cast<int>(x.size()) != P.vars())
        throw math_error("dimension-mismatch", "evaluation point arity mismatch");
    FieldElement acc(0);
    for (const auto& [e, c] : P.terms()) {
        FieldElement t = c;
        for (size_t i = 0; i < x.size(); ++i)
            if (e[i] > 0) t = t * x[i].pow(e[i]);
        acc = acc + t;
    }
    return acc;
}

MultiPoly<FieldElement> specialize_z(const MultiPoly<Poly<FieldElement>>& P,
                                     const FieldElement& alpha) {
    MultiPoly<FieldElement> out(P.vars());
    for (const auto& [e, c] : P.terms()) out.add_term(e, c.eval(alpha));
    return out;
}

} // namespace transcend
