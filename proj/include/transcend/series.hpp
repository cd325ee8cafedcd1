#ifndef TRANSCEND_SERIES_HPP
#define TRANSCEND_SERIES_HPP

#include <optional>

#include "transcend/poly.hpp"

namespace transcend {

// Power series truncation: exactly `order` stored coefficients, for exponents
// 0 .. order-1.  Operations never claim coefficients beyond what the operand
// truncations support; mixed orders truncate to the minimum.
class TruncSeries {
public:
    explicit TruncSeries(size_t order) : c_(order, FieldElement()) {}
    TruncSeries(std::vector<FieldElement> coeffs, size_t order) : c_(std::move(coeffs)) {
        if (c_.size() > order)
            throw math_error("truncation-mismatch", "more coefficients than the truncation order");
        c_.resize(order, FieldElement());
    }

    static TruncSeries one(size_t order) {
        TruncSeries s(order);
        if (order > 0) s.c_[0] = FieldElement(1);
        return s;
    }
    static TruncSeries from_poly(const Poly<FieldElement>& p, size_t order) {
        TruncSeries s(order);
        for (size_t i = 0; i < order && i < p.coeffs().size(); ++i) s.c_[i] = p.coeffs()[i];
        return s;
    }

    size_t order() const { return c_.size(); }
    const FieldElement& coeff(size_t k) const {
        if (k >= c_.size()) throw math_error("truncation-exceeded", "coefficient beyond truncation order");
        return c_[k];
    }
    void set_coeff(size_t k, FieldElement v) {
        if (k >= c_.size()) throw math_error("truncation-exceeded", "coefficient beyond truncation order");
        c_[k] = std::move(v);
    }
    const std::vector<FieldElement>& coeffs() const { return c_; }

    // smallest exponent with nonzero coefficient; nullopt means ">= order"
    std::optional<size_t> valuation() const {
        for (size_t i = 0; i < c_.size(); ++i)
            if (!c_[i].is_zero()) return i;
        return std::nullopt;
    }

    TruncSeries truncated(size_t order) const {
        if (order > c_.size())
            throw math_error("truncation-exceeded", "cannot extend a truncation by slicing");
        return TruncSeries(std::vector<FieldElement>(c_.begin(), c_.begin() + order), order);
    }

    TruncSeries operator+(const TruncSeries& o) const {
        size_t n = std::min(c_.size(), o.c_.size());
        TruncSeries r(n);
        for (size_t i = 0; i < n; ++i) r.c_[i] = c_[i] + o.c_[i];
        return r;
    }
    TruncSeries operator-(const TruncSeries& o) const {
        size_t n = std::min(c_.size(), o.c_.size());
        TruncSeries r(n);
        for (size_t i = 0; i < n; ++i) r.c_[i] = c_[i] - o.c_[i];
        return r;
    }
    TruncSeries operator-() const {
        TruncSeries r(*this);
        for (FieldElement& x : r.c_) x = -x;
        return r;
    }
    TruncSeries operator*(const TruncSeries& o) const {
        size_t n = std::min(c_.size(), o.c_.size());
        TruncSeries r(n);
        for (size_t i = 0; i < n && i < c_.size(); ++i) {
            if (c_[i].is_zero()) continue;
            for (size_t j = 0; i + j < n && j < o.c_.size(); ++j) {
                if (o.c_[j].is_zero()) continue;
                r.c_[i + j] += c_[i] * o.c_[j];
            }
        }
        return r;
    }
    TruncSeries scaled(const FieldElement& s) const {
        TruncSeries r(*this);
        for (FieldElement& x : r.c_) x = x * s;
        return r;
    }
    // multiplication by an exact polynomial keeps the truncation order
    TruncSeries mul_poly(const Poly<FieldElement>& p) const {
        TruncSeries r(c_.size());
        const auto& pc = p.coeffs();
        for (size_t k = 0; k < pc.size(); ++k) {
            if (is_zero_val(pc[k])) continue;
            for (size_t i = 0; i + k < c_.size(); ++i)
                r.c_[i + k] += pc[k] * c_[i];
        }
        return r;
    }

    TruncSeries pow(unsigned long e) const {
        TruncSeries acc = one(c_.size());
        TruncSeries base(*this);
        while (e > 0) {
            if (e & 1) acc = acc * base;
            e >>= 1;
            if (e) base = base * base;
        }
        return acc;
    }

    // d/dz, one order lower
    TruncSeries derivative() const {
        if (c_.empty()) return TruncSeries(static_cast<size_t>(0));
        TruncSeries r(c_.size() - 1);
        for (size_t i = 1; i < c_.size(); ++i)
            r.c_[i - 1] = FieldElement(static_cast<long>(i)) * c_[i];
        return r;
    }

    // s(z^k) at the requested truncation; coefficients above k*(order-1) are
    // not derivable from this truncation
    TruncSeries substitute_zpow(int k, size_t out_order) const {
        if (k < 1) throw math_error("invalid-exponent", "substitution exponent must be >= 1");
        if (c_.empty())
            throw math_error("truncation-exceeded", "empty truncation");
        if (out_order > static_cast<size_t>(k) * (c_.size() - 1) + 1)
            throw math_error("truncation-exceeded",
                             "requested order exceeds what the truncation determines");
        TruncSeries r(out_order);
        for (size_t i = 0; i < c_.size(); ++i) {
            size_t e = i * static_cast<size_t>(k);
            if (e >= out_order) break;
            r.c_[e] = c_[i];
        }
        return r;
    }

    bool operator==(const TruncSeries& o) const {
        return c_.size() == o.c_.size() &&
               std::equal(c_.begin(), c_.end(), o.c_.begin(),
                          [](const FieldElement& a, const FieldElement& b) { return a == b; });
    }

private:
    std::vector<FieldElement> c_;
};

// nullopt encodes "valuation >= order": every stored coefficient vanishes.
inline std::optional<size_t> series_valuation(const TruncSeries& s) { return s.valuation(); }

} // namespace transcend

#endif
