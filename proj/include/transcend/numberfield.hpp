#ifndef TRANSCEND_NUMBERFIELD_HPP
#define TRANSCEND_NUMBERFIELD_HPP

#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "transcend/ball.hpp"
#include "transcend/rational.hpp"

namespace transcend {

// Number field Q(theta) presented by a monic squarefree polynomial, stored
// with ascending coefficients.  Embeddings are certified root enclosures of
// the defining polynomial; their order is fixed at first isolation (real part
// ascending, positive imaginary part first on ties) and is stable under
// refinement.
class NumberField : public std::enable_shared_from_this<NumberField> {
public:
    static std::shared_ptr<const NumberField> create(std::vector<Rational> minpoly_ascending);
    static const std::shared_ptr<const NumberField>& rationals();

    int degree() const { return h_; }
    const std::vector<Rational>& minpoly() const { return minpoly_; }

    // Pairwise-disjoint certified balls around the roots, radius <= 2^(-prec-8).
    std::vector<ComplexBall> embeddings(mpfr_prec_t prec) const;

    // Reduces a coordinate vector of length >= degree in place modulo the
    // minimal polynomial, truncating it to length degree.
    void reduce(std::vector<Rational>& c) const;

private:
    NumberField() = default;

    void refine_locked(mpfr_prec_t target) const;

    std::vector<Rational> minpoly_;
    int h_ = 0;
    std::vector<std::vector<Rational>> powers_;  // theta^(h+k), k = 0..h-2

    mutable std::mutex mu_;
    mutable mpfr_prec_t root_prec_ = 0;           // working precision of cached midpoints
    mutable std::vector<std::pair<Mpfr, Mpfr>> root_mid_;
    mutable std::vector<Rational> root_rad_;      // certified radii for cached midpoints
};

// Element of a number field in power-basis coordinates.  A default or
// rational-constructed element is "detached": it carries no field and acts as
// a rational scalar compatible with any field.
class FieldElement {
public:
    FieldElement() : coords_(1, Rational(0)) {}
    FieldElement(long v) : coords_(1, Rational(v)) {}
    FieldElement(const Rational& q) : coords_(1, q) {}
    FieldElement(std::shared_ptr<const NumberField> f, std::vector<Rational> coords);

    static FieldElement generator(const std::shared_ptr<const NumberField>& f);

    const std::shared_ptr<const NumberField>& field() const { return field_; }
    const std::vector<Rational>& coords() const { return coords_; }

    bool is_zero() const;
    bool is_rational_valued() const;
    // pre: is_rational_valued()
    Rational rational_value() const;

    FieldElement operator+(const FieldElement& o) const;
    FieldElement operator-(const FieldElement& o) const;
    FieldElement operator-() const;
    FieldElement operator*(const FieldElement& o) const;
    FieldElement operator/(const FieldElement& o) const;
    bool operator==(const FieldElement& o) const;
    bool operator!=(const FieldElement& o) const { return !(*this == o); }

    FieldElement& operator+=(const FieldElement& o) { *this = *this + o; return *this; }
    FieldElement& operator-=(const FieldElement& o) { *this = *this - o; return *this; }
    FieldElement& operator*=(const FieldElement& o) { *this = *this * o; return *this; }

    // pre: nonzero
    FieldElement inverse() const;
    FieldElement pow(long e) const;

    // Certified rational upper bound m on max_j |sigma_j(x)| with
    // m <= max_j |sigma_j(x)| * (1 + 2^(1-prec)); exact for rational values.
    Rational house(mpfr_prec_t prec) const;

    // Ball enclosing sigma_j(x) with radius <= 2^(1-prec).
    ComplexBall embed(int j, mpfr_prec_t prec) const;

    std::string to_string() const;

private:
    static const std::shared_ptr<const NumberField>& common_field(const FieldElement& a,
                                                                  const FieldElement& b);
    std::vector<Rational> attached_coords(int h) const;

    std::shared_ptr<const NumberField> field_;  // null iff detached
    std::vector<Rational> coords_;              // length degree, or length 1 when detached
};

inline FieldElement operator*(const Rational& q, const FieldElement& x) {
    return FieldElement(q) * x;
}

// Scales the whole list by one rational so that every power-basis coordinate
// becomes an integer, the collective content is 1, and the first nonzero
// coordinate (scanning elements in order, coordinates ascending) is positive.
// An all-zero list is returned unchanged.
std::vector<FieldElement> primitive_scaled(const std::vector<FieldElement>& xs);

// Certified comparison of |sigma_j(x)| against a rational threshold:
// -1 for certified less, +1 for certified greater, 0 for exact equality or
// failure to separate within the precision cap.  Exact for rational values.
int compare_abs(const FieldElement& x, int j, const Rational& r,
                mpfr_prec_t cap = mpfr_prec_t(1) << 14);

// Same for |sigma_j(x)|^e.
int compare_abs_pow(const FieldElement& x, unsigned long e, int j, const Rational& r,
                    mpfr_prec_t cap = mpfr_prec_t(1) << 14);

} // namespace transcend

#endif
