#ifndef TRANSCEND_POLY_HPP
#define TRANSCEND_POLY_HPP

#include <vector>

#include "transcend/numberfield.hpp"

namespace transcend {

inline bool is_zero_val(const FieldElement& x) { return x.is_zero(); }
inline bool is_zero_val(const Rational& x) { return x == 0; }
inline bool is_zero_val(const Integer& x) { return x == 0; }

// Univariate polynomial, ascending coefficients, no trailing zeros.
// T is a field (FieldElement, Rational) for the division-based operations;
// purely ring operations work for any exact coefficient type.
template <class T>
class Poly {
public:
    Poly() = default;
    explicit Poly(long v) { if (v != 0) c_.push_back(T(v)); }
    explicit Poly(std::vector<T> coeffs) : c_(std::move(coeffs)) { trim(); }
    static Poly constant(T v) { return Poly(std::vector<T>{std::move(v)}); }
    static Poly monomial(T v, size_t k) {
        std::vector<T> c(k + 1, T(0));
        c[k] = std::move(v);
        return Poly(std::move(c));
    }

    int deg() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<T>& coeffs() const { return c_; }
    T coeff(size_t k) const { return k < c_.size() ? c_[k] : T(0); }
    const T& leading() const { return c_.back(); }

    // valuation: smallest exponent with nonzero coefficient; -1 for zero poly
    long valuation() const {
        for (size_t i = 0; i < c_.size(); ++i)
            if (!is_zero_val(c_[i])) return static_cast<long>(i);
        return -1;
    }

    Poly operator+(const Poly& o) const {
        std::vector<T> r(std::max(c_.size(), o.c_.size()), T(0));
        for (size_t i = 0; i < c_.size(); ++i) r[i] = c_[i];
        for (size_t i = 0; i < o.c_.size(); ++i) r[i] = r[i] + o.c_[i];
        return Poly(std::move(r));
    }
    Poly operator-(const Poly& o) const {
        std::vector<T> r(std::max(c_.size(), o.c_.size()), T(0));
        for (size_t i = 0; i < c_.size(); ++i) r[i] = c_[i];
        for (size_t i = 0; i < o.c_.size(); ++i) r[i] = r[i] - o.c_[i];
        return Poly(std::move(r));
    }
    Poly operator-() const {
        std::vector<T> r = c_;
        for (T& x : r) x = -x;
        return Poly(std::move(r));
    }
    Poly operator*(const Poly& o) const {
        if (c_.empty() || o.c_.empty()) return Poly();
        std::vector<T> r(c_.size() + o.c_.size() - 1, T(0));
        for (size_t i = 0; i < c_.size(); ++i) {
            if (is_zero_val(c_[i])) continue;
            for (size_t j = 0; j < o.c_.size(); ++j) {
                if (is_zero_val(o.c_[j])) continue;
                r[i + j] = r[i + j] + c_[i] * o.c_[j];
            }
        }
        return Poly(std::move(r));
    }
    Poly scaled(const T& s) const {
        std::vector<T> r = c_;
        for (T& x : r) x = x * s;
        return Poly(std::move(r));
    }
    bool operator==(const Poly& o) const {
        if (c_.size() != o.c_.size()) return false;
        for (size_t i = 0; i < c_.size(); ++i)
            if (!(c_[i] == o.c_[i])) return false;
        return true;
    }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    Poly derivative() const {
        if (c_.size() <= 1) return Poly();
        std::vector<T> r(c_.size() - 1, T(0));
        for (size_t i = 1; i < c_.size(); ++i) r[i - 1] = T(static_cast<long>(i)) * c_[i];
        return Poly(std::move(r));
    }

    template <class U>
    U eval(const U& x) const {
        if (c_.empty()) return U(0);
        U acc = U(c_.back());
        for (size_t i = c_.size() - 1; i-- > 0;) acc = acc * x + U(c_[i]);
        return acc;
    }

    // substitute z -> z^k
    Poly compose_zpow(int k) const {
        if (c_.empty()) return Poly();
        std::vector<T> r(static_cast<size_t>(deg()) * k + 1, T(0));
        for (size_t i = 0; i < c_.size(); ++i) r[i * k] = c_[i];
        return Poly(std::move(r));
    }

    // field-coefficient division with remainder
    std::pair<Poly, Poly> divrem(const Poly& d) const {
        if (d.is_zero()) throw math_error("division-by-zero", "polynomial division by zero");
        std::vector<T> r = c_, q;
        int dd = d.deg();
        if (deg() >= dd) q.assign(static_cast<size_t>(deg() - dd) + 1, T(0));
        T linv = T(1) / d.leading();
        while (static_cast<int>(r.size()) - 1 >= dd) {
            if (is_zero_val(r.back())) { r.pop_back(); continue; }
            size_t shift = r.size() - 1 - dd;
            T f = r.back() * linv;
            q[shift] = f;
            for (int i = 0; i <= dd; ++i) r[shift + i] = r[shift + i] - f * d.c_[i];
            r.pop_back();
        }
        return {Poly(std::move(q)), Poly(std::move(r))};
    }

    // exact division; throws if the remainder is nonzero
    Poly exact_div(const Poly& d) const {
        auto [q, r] = divrem(d);
        if (!r.is_zero()) throw math_error("inexact-division", "polynomial division left a remainder");
        return q;
    }

    bool divisible_by(const Poly& d) const {
        if (d.is_zero()) return is_zero();
        return divrem(d).second.is_zero();
    }

    Poly monic() const {
        if (c_.empty()) return Poly();
        return scaled(T(1) / leading());
    }

private:
    void trim() {
        while (!c_.empty() && is_zero_val(c_.back())) c_.pop_back();
    }
    std::vector<T> c_;
};

template <class T>
bool is_zero_val(const Poly<T>& p) { return p.is_zero(); }

template <class T>
Poly<T> poly_gcd(Poly<T> a, Poly<T> b) {
    while (!b.is_zero()) {
        Poly<T> r = a.divrem(b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

template <class T>
Poly<T> poly_lcm(const Poly<T>& a, const Poly<T>& b) {
    if (a.is_zero() || b.is_zero()) return Poly<T>();
    Poly<T> g = poly_gcd(a, b);
    return (a * b).exact_div(g).monic();
}

// max |coefficient| for integer coefficients, max house for field coefficients
inline Rational poly_height(const Poly<FieldElement>& p, mpfr_prec_t prec) {
    Rational h(0);
    for (const FieldElement& c : p.coeffs()) {
        Rational v = c.house(prec);
        if (v > h) h = v;
    }
    return h;
}

inline Rational poly_height(const Poly<Integer>& p) {
    Rational h(0);
    for (const Integer& c : p.coeffs()) {
        Rational v(abs(c));
        if (v > h) h = v;
    }
    return h;
}

} // namespace transcend

#endif
