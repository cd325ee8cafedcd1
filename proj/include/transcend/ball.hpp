#ifndef TRANSCEND_BALL_HPP
#define TRANSCEND_BALL_HPP

#include <mpfr.h>

#include <string>
#include <utility>

#include "transcend/rational.hpp"

namespace transcend {

// Thin RAII wrapper over mpfr_t.  Copying preserves the precision and the
// exact bit pattern.
class Mpfr {
public:
    explicit Mpfr(mpfr_prec_t prec = 64) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
    Mpfr(const Mpfr& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
    Mpfr(Mpfr&& o) noexcept { mpfr_init2(v_, 2); mpfr_swap(v_, o.v_); }
    Mpfr& operator=(const Mpfr& o) {
        if (this != &o) { mpfr_set_prec(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
        return *this;
    }
    Mpfr& operator=(Mpfr&& o) noexcept { mpfr_swap(v_, o.v_); return *this; }
    ~Mpfr() { mpfr_clear(v_); }

    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }
    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }

private:
    mpfr_t v_;
};

// Exact conversion: any finite mpfr value is m * 2^e, hence rational.
inline Rational mpfr_to_rational(mpfr_srcptr x) {
    if (!mpfr_number_p(x))
        throw precision_error("precision-exhaustion", "non-finite value in rigorous bound");
    Rational q;
    mpfr_get_q(q.get_mpq_t(), x);
    q.canonicalize();
    return q;
}

inline std::string mpfr_to_string(mpfr_srcptr x, int digits) {
    char* s = nullptr;
    mpfr_asprintf(&s, "%.*Re", digits, x);
    std::string out(s);
    mpfr_free_str(s);
    return out;
}

// Complex ball: midpoint (re, im) at `prec` bits, radius an upper bound on
// |true - mid| kept at a fixed small precision and always rounded upward.
// All derived bounds are conservative; radii never round toward zero.
class ComplexBall {
public:
    static constexpr mpfr_prec_t radius_prec = 64;

    explicit ComplexBall(mpfr_prec_t prec = 64)
        : re_(prec), im_(prec), rad_(radius_prec), prec_(prec) {}

    static ComplexBall from_rational(const Rational& re, const Rational& im, mpfr_prec_t prec);
    static ComplexBall exact_integer(long v, mpfr_prec_t prec);

    mpfr_prec_t prec() const { return prec_; }
    const Mpfr& re() const { return re_; }
    const Mpfr& im() const { return im_; }
    const Mpfr& rad() const { return rad_; }
    Mpfr& re() { return re_; }
    Mpfr& im() { return im_; }
    Mpfr& rad() { return rad_; }

    ComplexBall operator+(const ComplexBall& o) const;
    ComplexBall operator-(const ComplexBall& o) const;
    ComplexBall operator-() const;
    ComplexBall operator*(const ComplexBall& o) const;
    ComplexBall scaled(const Rational& c) const;   // exact scalar, rounded product
    ComplexBall scaled_si(long c) const;
    ComplexBall pow(unsigned long e) const;

    // Certified modulus bounds as exact rationals.
    Rational abs_ub() const;
    Rational abs_lb() const;   // max(0, |mid| - rad)
    bool contains_zero() const { return abs_lb() == 0; }

    // Appends the worst-case midpoint rounding error of `ops` elementary
    // operations to the radius.
    void absorb_rounding(int ops);

    std::string re_string() const { return mpfr_to_string(re_.get(), digits()); }
    std::string im_string() const { return mpfr_to_string(im_.get(), digits()); }
    std::string rad_string() const { return mpfr_to_string(rad_.get(), 3); }

private:
    int digits() const { return static_cast<int>(prec_ * 0.30103) + 2; }

    Mpfr re_, im_, rad_;
    mpfr_prec_t prec_;
};

// |q| as directed-rounding mpfr helpers used by certification loops.
inline Mpfr rational_to_mpfr(const Rational& q, mpfr_prec_t prec, mpfr_rnd_t rnd) {
    Mpfr x(prec);
    mpfr_set_q(x.get(), q.get_mpq_t(), rnd);
    return x;
}

// Re-rounds a ball to the given precision, inflating the radius accordingly.
ComplexBall round_ball(const ComplexBall& b, mpfr_prec_t prec);

} // namespace transcend

#endif
