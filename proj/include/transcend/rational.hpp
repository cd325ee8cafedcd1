#ifndef TRANSCEND_RATIONAL_HPP
#define TRANSCEND_RATIONAL_HPP

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

#include "transcend/errors.hpp"

namespace transcend {

using Integer = mpz_class;
using Rational = mpq_class;

// Parses "p", "-p" or "p/q" with q > 0 after canonicalisation.
inline Rational parse_rational(const std::string& s) {
    if (s.empty())
        throw usage_error("parse", "empty rational literal");
    for (char ch : s) {
        if (!(ch == '-' || ch == '+' || ch == '/' || (ch >= '0' && ch <= '9')))
            throw usage_error("parse", "invalid rational literal: " + s);
    }
    mpq_t q;
    mpq_init(q);
    if (mpq_set_str(q, s.c_str(), 10) != 0) {
        mpq_clear(q);
        throw usage_error("parse", "invalid rational literal: " + s);
    }
    if (mpz_sgn(mpq_denref(q)) == 0) {
        mpq_clear(q);
        throw usage_error("parse", "zero denominator in rational literal: " + s);
    }
    mpq_canonicalize(q);
    Rational r(q);
    mpq_clear(q);
    return r;
}

inline std::string rational_to_string(const Rational& r) {
    return r.get_str();
}

inline Integer int_pow(const Integer& base, unsigned long e) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline Rational rat_pow(const Rational& base, long e) {
    if (e == 0) return Rational(1);
    Rational r;
    unsigned long a = static_cast<unsigned long>(e < 0 ? -e : e);
    mpz_pow_ui(r.get_num_mpz_t(), base.get_num().get_mpz_t(), a);
    mpz_pow_ui(r.get_den_mpz_t(), base.get_den().get_mpz_t(), a);
    if (e < 0) {
        if (base == 0) throw math_error("division-by-zero", "0 raised to negative power");
        mpq_inv(r.get_mpq_t(), r.get_mpq_t());
    }
    r.canonicalize();
    return r;
}

inline Rational rat_abs(const Rational& r) {
    return r < 0 ? Rational(-r) : r;
}

inline Integer int_lcm(const Integer& a, const Integer& b) {
    Integer r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline Integer int_gcd(const Integer& a, const Integer& b) {
    Integer r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

// binomial(n, k) as an Integer; callers convert when a machine size is safe.
inline Integer binomial(unsigned long n, unsigned long k) {
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

inline Integer factorial(unsigned long n) {
    Integer r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

} // namespace transcend

#endif
