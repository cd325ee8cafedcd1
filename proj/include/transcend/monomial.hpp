#ifndef TRANSCEND_MONOMIAL_HPP
#define TRANSCEND_MONOMIAL_HPP

#include <map>
#include <vector>

#include "transcend/series.hpp"

namespace transcend {

using Exponents = std::vector<int>;

inline int total_degree(const Exponents& e) {
    int d = 0;
    for (int x : e) d += x;
    return d;
}

// p = binomial(D+m, m)
Integer basis_size(int m, int D);
size_t basis_size_ul(int m, int D);

// Graded-lexicographic monomial enumeration: total degree ascending, ties by
// lexicographic order with X_1 largest (X_1-heavy monomials first).  Index 0
// is the constant monomial; indices are dense in 0..p-1.
class MonomialBasis {
public:
    MonomialBasis(int m, int D);

    int vars() const { return m_; }
    int degree_bound() const { return D_; }
    size_t size() const { return exps_.size(); }
    const Exponents& exponent(size_t i) const;
    size_t index_of(const Exponents& mu) const;  // errors if outside the basis
    bool contains(const Exponents& mu) const;
    // first index of total degree d (degree filtration is contiguous)
    size_t degree_start(int d) const;

private:
    int m_, D_;
    std::vector<Exponents> exps_;
    std::map<Exponents, size_t> index_;
};

// f^mu = prod f_i^(mu_i) truncated to the common order of the f_i.
TruncSeries monomial_eval(const MonomialBasis& basis, const std::vector<TruncSeries>& f,
                          const Exponents& mu);

// Multivariate polynomial with exact coefficients, stored sparsely in a
// deterministic (lexicographic key) order; zero coefficients never stored.
template <class C>
class MultiPoly {
public:
    MultiPoly() : m_(0) {}
    explicit MultiPoly(int m) : m_(m) {}

    int vars() const { return m_; }
    bool is_zero() const { return terms_.empty(); }
    size_t term_count() const { return terms_.size(); }
    const std::map<Exponents, C>& terms() const { return terms_; }

    int degree() const {
        int d = -1;
        for (const auto& [e, c] : terms_) d = std::max(d, total_degree(e));
        return d;
    }

    C coeff(const Exponents& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? C(0) : it->second;
    }

    void add_term(const Exponents& e, const C& c) {
        if (static_cast<int>(e.size()) != m_)
            throw math_error("dimension-mismatch", "exponent tuple arity mismatch");
        if (is_zero_val(c)) return;
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(e, c);
        } else {
            it->second = it->second + c;
            if (is_zero_val(it->second)) terms_.erase(it);
        }
    }

    MultiPoly operator+(const MultiPoly& o) const {
        check_arity(o);
        MultiPoly r(*this);
        for (const auto& [e, c] : o.terms_) r.add_term(e, c);
        return r;
    }
    MultiPoly operator-(const MultiPoly& o) const {
        check_arity(o);
        MultiPoly r(*this);
        for (const auto& [e, c] : o.terms_) r.add_term(e, C(0) - c);
        return r;
    }
    MultiPoly operator*(const MultiPoly& o) const {
        check_arity(o);
        MultiPoly r(m_);
        for (const auto& [e1, c1] : terms_)
            for (const auto& [e2, c2] : o.terms_) {
                Exponents e(m_);
                for (int i = 0; i < m_; ++i) e[i] = e1[i] + e2[i];
                r.add_term(e, c1 * c2);
            }
        return r;
    }
    MultiPoly scaled(const C& s) const {
        MultiPoly r(m_);
        for (const auto& [e, c] : terms_) r.add_term(e, c * s);
        return r;
    }
    // multiply by the monomial X^e
    MultiPoly shifted(const Exponents& sh) const {
        MultiPoly r(m_);
        for (const auto& [e, c] : terms_) {
            Exponents ne(m_);
            for (int i = 0; i < m_; ++i) ne[i] = e[i] + sh[i];
            r.add_term(ne, c);
        }
        return r;
    }
    bool operator==(const MultiPoly& o) const {
        if (m_ != o.m_ || terms_.size() != o.terms_.size()) return false;
        auto it = terms_.begin(), jt = o.terms_.begin();
        for (; it != terms_.end(); ++it, ++jt)
            if (it->first != jt->first || !(it->second == jt->second)) return false;
        return true;
    }
    bool operator!=(const MultiPoly& o) const { return !(*this == o); }

private:
    void check_arity(const MultiPoly& o) const {
        if (m_ != o.m_) throw math_error("dimension-mismatch", "variable count mismatch");
    }

    int m_;
    std::map<Exponents, C> terms_;
};

// All f^mu for mu in the basis, one series multiplication per monomial.
std::vector<TruncSeries> all_monomials(const MonomialBasis& basis,
                                       const std::vector<TruncSeries>& f);

// P(f_1,...,f_m) as a truncated series; for z-parametrized coefficients the
// polynomial coefficient multiplies the monomial series exactly.
TruncSeries eval_series(const MultiPoly<FieldElement>& P, const std::vector<TruncSeries>& f);
TruncSeries eval_series(const MultiPoly<Poly<FieldElement>>& P,
                        const std::vector<TruncSeries>& f);

FieldElement eval_field(const MultiPoly<FieldElement>& P, const std::vector<FieldElement>& x);

// Q(z, X) -> Q(alpha, X)
MultiPoly<FieldElement> specialize_z(const MultiPoly<Poly<FieldElement>>& P,
                                     const FieldElement& alpha);

// psi: coefficients of P on the monomial basis as a dense length-p vector.
template <class C>
std::vector<C> psi_linear_form(const MultiPoly<C>& P, const MonomialBasis& basis) {
    if (P.vars() != basis.vars())
        throw math_error("dimension-mismatch", "variable count mismatch with basis");
    if (P.degree() > basis.degree_bound())
        throw math_error("degree-bound-too-small", "polynomial degree exceeds the basis bound");
    std::vector<C> v(basis.size(), C(0));
    for (const auto& [e, c] : P.terms()) v[basis.index_of(e)] = c;
    return v;
}

} // namespace transcend

#endif
