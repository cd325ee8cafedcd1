#include "transcend/ball.hpp"

#include <algorithm>

namespace transcend {

namespace {

// Upper bound on |mid| at radius precision.
void midpoint_abs_ub(const ComplexBall& b, mpfr_ptr out) {
    mpfr_hypot(out, b.re().get(), b.im().get(), MPFR_RNDU);
}

} // namespace

void ComplexBall::absorb_rounding(int ops) {
    if (ops <= 0) return;
    bool rz = mpfr_zero_p(re_.get()), iz = mpfr_zero_p(im_.get());
    if (rz && iz) return;
    mpfr_exp_t e;
    if (rz) e = mpfr_get_exp(im_.get());
    else if (iz) e = mpfr_get_exp(re_.get());
    else e = std::max(mpfr_get_exp(re_.get()), mpfr_get_exp(im_.get()));
    Mpfr slack(radius_prec);
    mpfr_set_si(slack.get(), ops, MPFR_RNDU);
    mpfr_mul_2si(slack.get(), slack.get(), e - prec_, MPFR_RNDU);
    mpfr_add(rad_.get(), rad_.get(), slack.get(), MPFR_RNDU);
}

ComplexBall ComplexBall::from_rational(const Rational& re, const Rational& im, mpfr_prec_t prec) {
    ComplexBall b(prec);
    int t1 = mpfr_set_q(b.re_.get(), re.get_mpq_t(), MPFR_RNDN);
    int t2 = mpfr_set_q(b.im_.get(), im.get_mpq_t(), MPFR_RNDN);
    if (t1 != 0 || t2 != 0) b.absorb_rounding(1);
    return b;
}

ComplexBall ComplexBall::exact_integer(long v, mpfr_prec_t prec) {
    ComplexBall b(prec);
    if (mpfr_set_si(b.re_.get(), v, MPFR_RNDN) != 0) b.absorb_rounding(1);
    return b;
}

ComplexBall ComplexBall::operator+(const ComplexBall& o) const {
    ComplexBall b(std::max(prec_, o.prec_));
    mpfr_add(b.re_.get(), re_.get(), o.re_.get(), MPFR_RNDN);
    mpfr_add(b.im_.get(), im_.get(), o.im_.get(), MPFR_RNDN);
    mpfr_add(b.rad_.get(), rad_.get(), o.rad_.get(), MPFR_RNDU);
    b.absorb_rounding(1);
    return b;
}

ComplexBall ComplexBall::operator-(const ComplexBall& o) const {
    ComplexBall b(std::max(prec_, o.prec_));
    mpfr_sub(b.re_.get(), re_.get(), o.re_.get(), MPFR_RNDN);
    mpfr_sub(b.im_.get(), im_.get(), o.im_.get(), MPFR_RNDN);
    mpfr_add(b.rad_.get(), rad_.get(), o.rad_.get(), MPFR_RNDU);
    b.absorb_rounding(1);
    return b;
}

ComplexBall ComplexBall::operator-() const {
    ComplexBall b(*this);
    mpfr_neg(b.re_.get(), b.re_.get(), MPFR_RNDN);
    mpfr_neg(b.im_.get(), b.im_.get(), MPFR_RNDN);
    return b;
}

ComplexBall ComplexBall::operator*(const ComplexBall& o) const {
    ComplexBall b(std::max(prec_, o.prec_));
    // Midpoints with a single rounding per component.
    mpfr_fmms(b.re_.get(), re_.get(), o.re_.get(), im_.get(), o.im_.get(), MPFR_RNDN);
    mpfr_fmma(b.im_.get(), re_.get(), o.im_.get(), im_.get(), o.re_.get(), MPFR_RNDN);
    // |a|*rb + |b|*ra + ra*rb, upward.
    Mpfr ma(radius_prec), mb(radius_prec), t(radius_prec);
    midpoint_abs_ub(*this, ma.get());
    midpoint_abs_ub(o, mb.get());
    mpfr_mul(t.get(), ma.get(), o.rad_.get(), MPFR_RNDU);
    mpfr_fma(t.get(), mb.get(), rad_.get(), t.get(), MPFR_RNDU);
    mpfr_fma(t.get(), rad_.get(), o.rad_.get(), t.get(), MPFR_RNDU);
    mpfr_set(b.rad_.get(), t.get(), MPFR_RNDU);
    b.absorb_rounding(1);
    return b;
}

ComplexBall ComplexBall::scaled(const Rational& c) const {
    ComplexBall b(*this);
    mpfr_mul_q(b.re_.get(), re_.get(), c.get_mpq_t(), MPFR_RNDN);
    mpfr_mul_q(b.im_.get(), im_.get(), c.get_mpq_t(), MPFR_RNDN);
    Rational a = rat_abs(c);
    mpfr_mul_q(b.rad_.get(), rad_.get(), a.get_mpq_t(), MPFR_RNDU);
    b.absorb_rounding(1);
    return b;
}

ComplexBall ComplexBall::scaled_si(long c) const {
    ComplexBall b(*this);
    mpfr_mul_si(b.re_.get(), re_.get(), c, MPFR_RNDN);
    mpfr_mul_si(b.im_.get(), im_.get(), c, MPFR_RNDN);
    mpfr_mul_si(b.rad_.get(), rad_.get(), c < 0 ? -c : c, MPFR_RNDU);
    b.absorb_rounding(1);
    return b;
}

ComplexBall ComplexBall::pow(unsigned long e) const {
    ComplexBall acc = ComplexBall::exact_integer(1, prec_);
    ComplexBall base(*this);
    while (e > 0) {
        if (e & 1) acc = acc * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return acc;
}

Rational ComplexBall::abs_ub() const {
    Mpfr t(std::max<mpfr_prec_t>(radius_prec, prec_));
    mpfr_hypot(t.get(), re_.get(), im_.get(), MPFR_RNDU);
    mpfr_add(t.get(), t.get(), rad_.get(), MPFR_RNDU);
    return mpfr_to_rational(t.get());
}

Rational ComplexBall::abs_lb() const {
    Mpfr t(std::max<mpfr_prec_t>(radius_prec, prec_));
    mpfr_hypot(t.get(), re_.get(), im_.get(), MPFR_RNDD);
    mpfr_sub(t.get(), t.get(), rad_.get(), MPFR_RNDD);
    if (mpfr_sgn(t.get()) <= 0) return Rational(0);
    return mpfr_to_rational(t.get());
}

} // namespace transcend
