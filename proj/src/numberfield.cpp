#include "transcend/numberfield.hpp"

#include <algorithm>
#include <numeric>

namespace transcend {

namespace {

constexpr mpfr_prec_t kPrecCap = 1 << 20;

// --- rational polynomial helpers (ascending coefficients) ---

void rp_trim(std::vector<Rational>& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

std::vector<Rational> rp_derivative(const std::vector<Rational>& p) {
    std::vector<Rational> d;
    for (size_t i = 1; i < p.size(); ++i) d.push_back(Rational(static_cast<long>(i)) * p[i]);
    rp_trim(d);
    return d;
}

bool rp_coprime_with_derivative(const std::vector<Rational>& p) {
    auto mod = [](std::vector<Rational> a, const std::vector<Rational>& b) {
        rp_trim(a);
        while (a.size() >= b.size() && !a.empty()) {
            Rational f = a.back() / b.back();
            size_t off = a.size() - b.size();
            for (size_t i = 0; i < b.size(); ++i) a[off + i] -= f * b[i];
            rp_trim(a);
        }
        return a;
    };
    std::vector<Rational> a = p, b = rp_derivative(p);
    rp_trim(a);
    while (!b.empty()) {
        std::vector<Rational> r = mod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return a.size() == 1;
}

// --- approximate complex arithmetic used only to locate roots; all rigor
//     comes from the certification pass below ---

struct Cpx {
    Mpfr re, im;
    explicit Cpx(mpfr_prec_t w) : re(w), im(w) {}
};

void cpx_sub(Cpx& r, const Cpx& a, const Cpx& b) {
    mpfr_sub(r.re.get(), a.re.get(), b.re.get(), MPFR_RNDN);
    mpfr_sub(r.im.get(), a.im.get(), b.im.get(), MPFR_RNDN);
}

void cpx_mul(Cpx& r, const Cpx& a, const Cpx& b) {
    mpfr_prec_t w = mpfr_get_prec(r.re.get());
    Mpfr tre(w), tim(w);
    mpfr_fmms(tre.get(), a.re.get(), b.re.get(), a.im.get(), b.im.get(), MPFR_RNDN);
    mpfr_fmma(tim.get(), a.re.get(), b.im.get(), a.im.get(), b.re.get(), MPFR_RNDN);
    mpfr_swap(r.re.get(), tre.get());
    mpfr_swap(r.im.get(), tim.get());
}

void cpx_div(Cpx& r, const Cpx& a, const Cpx& b) {
    mpfr_prec_t w = mpfr_get_prec(r.re.get());
    Mpfr den(w), nre(w), nim(w);
    mpfr_fmma(den.get(), b.re.get(), b.re.get(), b.im.get(), b.im.get(), MPFR_RNDN);
    mpfr_fmma(nre.get(), a.re.get(), b.re.get(), a.im.get(), b.im.get(), MPFR_RNDN);
    mpfr_fmms(nim.get(), a.im.get(), b.re.get(), a.re.get(), b.im.get(), MPFR_RNDN);
    mpfr_div(r.re.get(), nre.get(), den.get(), MPFR_RNDN);
    mpfr_div(r.im.get(), nim.get(), den.get(), MPFR_RNDN);
}

// Horner evaluation; coefficients are real (im parts zero).
void cpx_eval(Cpx& out, const std::vector<Cpx>& coeffs, const Cpx& z, mpfr_prec_t w) {
    Cpx acc(w), t(w);
    mpfr_set(acc.re.get(), coeffs.back().re.get(), MPFR_RNDN);
    mpfr_set(acc.im.get(), coeffs.back().im.get(), MPFR_RNDN);
    for (size_t i = coeffs.size() - 1; i-- > 0;) {
        cpx_mul(t, acc, z);
        mpfr_add(acc.re.get(), t.re.get(), coeffs[i].re.get(), MPFR_RNDN);
        mpfr_set(acc.im.get(), t.im.get(), MPFR_RNDN);
    }
    mpfr_swap(out.re.get(), acc.re.get());
    mpfr_swap(out.im.get(), acc.im.get());
}

std::vector<Cpx> cpx_coeffs(const std::vector<Rational>& p, mpfr_prec_t w) {
    std::vector<Cpx> c;
    c.reserve(p.size());
    for (const Rational& q : p) {
        Cpx t(w);
        mpfr_set_q(t.re.get(), q.get_mpq_t(), MPFR_RNDN);
        c.push_back(std::move(t));
    }
    return c;
}

// Ball Horner evaluation with exact rational coefficients.
ComplexBall ball_eval(const std::vector<Rational>& coeffs, const ComplexBall& z, mpfr_prec_t w) {
    ComplexBall acc = ComplexBall::from_rational(coeffs.back(), Rational(0), w);
    for (size_t i = coeffs.size() - 1; i-- > 0;) {
        acc = acc * z;
        acc = acc + ComplexBall::from_rational(coeffs[i], Rational(0), w);
    }
    return acc;
}

Rational pow2(long e) {
    Rational r(1);
    if (e >= 0) mpz_mul_2exp(r.get_num_mpz_t(), r.get_num().get_mpz_t(), e);
    else mpz_mul_2exp(r.get_den_mpz_t(), r.get_den().get_mpz_t(), -e);
    return r;
}

} // namespace

ComplexBall round_ball(const ComplexBall& b, mpfr_prec_t prec) {
    ComplexBall out(prec);
    mpfr_set(out.re().get(), b.re().get(), MPFR_RNDN);
    mpfr_set(out.im().get(), b.im().get(), MPFR_RNDN);
    mpfr_set(out.rad().get(), b.rad().get(), MPFR_RNDU);
    out.absorb_rounding(1);
    return out;
}

std::shared_ptr<const NumberField> NumberField::create(std::vector<Rational> minpoly) {
    rp_trim(minpoly);
    if (minpoly.size() < 2)
        throw math_error("invalid-minpoly", "defining polynomial must have degree >= 1");
    if (minpoly.back() != 1)
        throw math_error("invalid-minpoly", "defining polynomial must be monic");
    if (!rp_coprime_with_derivative(minpoly))
        throw math_error("invalid-minpoly", "defining polynomial must be squarefree");

    auto f = std::shared_ptr<NumberField>(new NumberField());
    f->minpoly_ = minpoly;
    int h = static_cast<int>(minpoly.size()) - 1;
    f->h_ = h;

    // powers_[k] = coordinates of theta^(h+k), k = 0..h-2.
    std::vector<Rational> cur(h);
    for (int i = 0; i < h; ++i) cur[i] = -minpoly[i];
    for (int k = 0; k + 1 < h; ++k) {
        f->powers_.push_back(cur);
        Rational top = cur[h - 1];
        for (int i = h - 1; i > 0; --i) cur[i] = cur[i - 1];
        cur[0] = 0;
        for (int i = 0; i < h; ++i) cur[i] += top * -minpoly[i];
    }
    return f;
}

const std::shared_ptr<const NumberField>& NumberField::rationals() {
    static std::shared_ptr<const NumberField> q =
        NumberField::create({Rational(0), Rational(1)});
    return q;
}

void NumberField::reduce(std::vector<Rational>& c) const {
    size_t h = static_cast<size_t>(h_);
    for (size_t k = c.size(); k-- > h;) {
        Rational v = c[k];
        if (v == 0) continue;
        const std::vector<Rational>& row = powers_[k - h];
        for (size_t i = 0; i < h; ++i) c[i] += v * row[i];
        c[k] = 0;
    }
    c.resize(h);
}

void NumberField::refine_locked(mpfr_prec_t target) const {
    int h = h_;
    std::vector<Rational> dp = rp_derivative(minpoly_);

    // Certified disk radii around the current midpoints via
    // min_i |z - xi_i| <= h * |p(z)/p'(z)|, plus pairwise disjointness.
    auto certify = [&](mpfr_prec_t w) -> bool {
        if (!root_mid_.empty())
            w = std::max(w, mpfr_get_prec(root_mid_[0].first.get()));
        std::vector<Rational> rad(h);
        std::vector<ComplexBall> pts;
        pts.reserve(h);
        for (int j = 0; j < h; ++j) {
            ComplexBall b(w);
            mpfr_set(b.re().get(), root_mid_[j].first.get(), MPFR_RNDN);
            mpfr_set(b.im().get(), root_mid_[j].second.get(), MPFR_RNDN);
            pts.push_back(std::move(b));
        }
        for (int j = 0; j < h; ++j) {
            ComplexBall pv = ball_eval(minpoly_, pts[j], w);
            ComplexBall dv = ball_eval(dp, pts[j], w);
            Rational lo = dv.abs_lb();
            if (lo == 0) return false;
            rad[j] = Rational(h) * pv.abs_ub() / lo;
        }
        for (int j = 0; j < h; ++j)
            for (int k = j + 1; k < h; ++k) {
                Rational dist = (pts[j] - pts[k]).abs_lb();
                if (!(dist > rad[j] + rad[k])) return false;
            }
        root_rad_ = std::move(rad);
        return true;
    };

    auto newton = [&](mpfr_prec_t w, int steps) {
        std::vector<Cpx> cp = cpx_coeffs(minpoly_, w);
        std::vector<Cpx> cdp = cpx_coeffs(dp, w);
        for (int j = 0; j < h; ++j) {
            Cpx z(w), pv(w), dv(w), q(w);
            mpfr_set(z.re.get(), root_mid_[j].first.get(), MPFR_RNDN);
            mpfr_set(z.im.get(), root_mid_[j].second.get(), MPFR_RNDN);
            for (int s = 0; s < steps; ++s) {
                cpx_eval(pv, cp, z, w);
                cpx_eval(dv, cdp, z, w);
                if (mpfr_zero_p(dv.re.get()) && mpfr_zero_p(dv.im.get())) break;
                cpx_div(q, pv, dv);
                mpfr_sub(z.re.get(), z.re.get(), q.re.get(), MPFR_RNDN);
                mpfr_sub(z.im.get(), z.im.get(), q.im.get(), MPFR_RNDN);
            }
            root_mid_[j].first = std::move(z.re);
            root_mid_[j].second = std::move(z.im);
        }
    };

    Rational tol = pow2(-static_cast<long>(target));
    auto good = [&]() {
        if (root_rad_.empty()) return false;
        for (const Rational& r : root_rad_)
            if (!(r <= tol)) return false;
        return true;
    };

    if (root_prec_ == 0) {
        // First isolation: Durand-Kerner from a perturbed circle, certified
        // every few sweeps; precision doubles until certification succeeds.
        for (mpfr_prec_t w = std::max<mpfr_prec_t>(128, 2 * target);; w *= 2) {
            if (w > kPrecCap)
                throw precision_error("precision-exhaustion", "root isolation failed to certify");
            std::vector<Cpx> cp = cpx_coeffs(minpoly_, w);
            Mpfr radius(w);
            mpfr_set_ui(radius.get(), 0, MPFR_RNDN);
            for (int i = 0; i < h; ++i) {
                Mpfr t(w);
                mpfr_set_q(t.get(), minpoly_[i].get_mpq_t(), MPFR_RNDN);
                mpfr_abs(t.get(), t.get(), MPFR_RNDN);
                mpfr_max(radius.get(), radius.get(), t.get(), MPFR_RNDN);
            }
            mpfr_add_ui(radius.get(), radius.get(), 1, MPFR_RNDN);

            std::vector<Cpx> z;
            Mpfr pi(w), ang(w), c(w), s(w);
            mpfr_const_pi(pi.get(), MPFR_RNDN);
            for (int j = 0; j < h; ++j) {
                Cpx p(w);
                mpfr_mul_si(ang.get(), pi.get(), 2 * j, MPFR_RNDN);
                mpfr_div_ui(ang.get(), ang.get(), h, MPFR_RNDN);
                mpfr_add_d(ang.get(), ang.get(), 0.5, MPFR_RNDN);
                mpfr_sin_cos(s.get(), c.get(), ang.get(), MPFR_RNDN);
                mpfr_mul(p.re.get(), radius.get(), c.get(), MPFR_RNDN);
                mpfr_mul(p.im.get(), radius.get(), s.get(), MPFR_RNDN);
                z.push_back(std::move(p));
            }

            root_mid_.clear();
            for (int j = 0; j < h; ++j)
                root_mid_.emplace_back(Mpfr(w), Mpfr(w));

            bool done = false;
            for (int round = 0; round < 80 && !done; ++round) {
                for (int it = 0; it < 10; ++it) {
                    for (int j = 0; j < h; ++j) {
                        Cpx num(w), den(w), t(w), d(w), q(w);
                        cpx_eval(num, cp, z[j], w);
                        mpfr_set_ui(den.re.get(), 1, MPFR_RNDN);
                        mpfr_set_zero(den.im.get(), 1);
                        for (int k = 0; k < h; ++k) {
                            if (k == j) continue;
                            cpx_sub(d, z[j], z[k]);
                            cpx_mul(t, den, d);
                            mpfr_swap(den.re.get(), t.re.get());
                            mpfr_swap(den.im.get(), t.im.get());
                        }
                        if (mpfr_zero_p(den.re.get()) && mpfr_zero_p(den.im.get())) continue;
                        cpx_div(q, num, den);
                        mpfr_sub(z[j].re.get(), z[j].re.get(), q.re.get(), MPFR_RNDN);
                        mpfr_sub(z[j].im.get(), z[j].im.get(), q.im.get(), MPFR_RNDN);
                    }
                }
                for (int j = 0; j < h; ++j) {
                    mpfr_set(root_mid_[j].first.get(), z[j].re.get(), MPFR_RNDN);
                    mpfr_set(root_mid_[j].second.get(), z[j].im.get(), MPFR_RNDN);
                }
                done = certify(w);
            }
            if (done) {
                root_prec_ = w;
                // Fix the embedding order once: real part ascending, and the
                // positive member of a conjugate pair first.
                std::vector<int> idx(h);
                std::iota(idx.begin(), idx.end(), 0);
                std::sort(idx.begin(), idx.end(), [&](int a, int b) {
                    int c1 = mpfr_cmp(root_mid_[a].first.get(), root_mid_[b].first.get());
                    if (c1 != 0) return c1 < 0;
                    return mpfr_cmp(root_mid_[a].second.get(), root_mid_[b].second.get()) > 0;
                });
                std::vector<std::pair<Mpfr, Mpfr>> mids;
                std::vector<Rational> rads;
                for (int j : idx) {
                    mids.push_back(std::move(root_mid_[j]));
                    rads.push_back(root_rad_[j]);
                }
                root_mid_ = std::move(mids);
                root_rad_ = std::move(rads);
                break;
            }
        }
    }

    while (!good()) {
        mpfr_prec_t w = std::max<mpfr_prec_t>(2 * root_prec_, 2 * target + 64);
        if (w > kPrecCap)
            throw precision_error("precision-exhaustion", "root refinement failed to certify");
        newton(w, 8);
        root_prec_ = w;
        if (!certify(w)) root_rad_.clear();
    }
}

std::vector<ComplexBall> NumberField::embeddings(mpfr_prec_t prec) const {
    std::lock_guard<std::mutex> lock(mu_);
    if (h_ == 1) {
        Rational root = -minpoly_[0];
        return {ComplexBall::from_rational(root, Rational(0), prec)};
    }
    refine_locked(prec + 8);
    std::vector<ComplexBall> out;
    out.reserve(h_);
    for (int j = 0; j < h_; ++j) {
        ComplexBall b(prec);
        mpfr_set(b.re().get(), root_mid_[j].first.get(), MPFR_RNDN);
        mpfr_set(b.im().get(), root_mid_[j].second.get(), MPFR_RNDN);
        Mpfr r(ComplexBall::radius_prec);
        mpfr_set_q(r.get(), root_rad_[j].get_mpq_t(), MPFR_RNDU);
        mpfr_set(b.rad().get(), r.get(), MPFR_RNDU);
        b.absorb_rounding(1);
        out.push_back(std::move(b));
    }
    return out;
}

// --- FieldElement ---

FieldElement::FieldElement(std::shared_ptr<const NumberField> f, std::vector<Rational> coords)
    : field_(std::move(f)), coords_(std::move(coords)) {
    if (!field_) throw math_error("invalid-field", "null field");
    size_t h = static_cast<size_t>(field_->degree());
    if (coords_.size() > h) throw math_error("invalid-coords", "coordinate vector too long");
    coords_.resize(h, Rational(0));
    for (Rational& c : coords_) c.canonicalize();
}

FieldElement FieldElement::generator(const std::shared_ptr<const NumberField>& f) {
    std::vector<Rational> c(f->degree(), Rational(0));
    if (f->degree() == 1) {
        c[0] = -f->minpoly()[0];
    } else {
        c[1] = 1;
    }
    return FieldElement(f, std::move(c));
}

bool FieldElement::is_zero() const {
    for (const Rational& c : coords_)
        if (c != 0) return false;
    return true;
}

bool FieldElement::is_rational_valued() const {
    for (size_t i = 1; i < coords_.size(); ++i)
        if (coords_[i] != 0) return false;
    return true;
}

Rational FieldElement::rational_value() const {
    if (!is_rational_valued())
        throw math_error("not-rational", "element is not rational-valued");
    return coords_[0];
}

const std::shared_ptr<const NumberField>& FieldElement::common_field(const FieldElement& a,
                                                                     const FieldElement& b) {
    if (a.field_ && b.field_ && a.field_ != b.field_ &&
        a.field_->minpoly() != b.field_->minpoly())
        throw math_error("field-mismatch", "elements of different number fields");
    return a.field_ ? a.field_ : b.field_;
}

std::vector<Rational> FieldElement::attached_coords(int h) const {
    if (field_) return coords_;
    std::vector<Rational> c(static_cast<size_t>(h), Rational(0));
    c[0] = coords_[0];
    return c;
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
    const auto& f = common_field(*this, o);
    if (!f) return FieldElement(Rational(coords_[0] + o.coords_[0]));
    std::vector<Rational> a = attached_coords(f->degree()), b = o.attached_coords(f->degree());
    for (size_t i = 0; i < a.size(); ++i) a[i] += b[i];
    return FieldElement(f, std::move(a));
}

FieldElement FieldElement::operator-(const FieldElement& o) const {
    const auto& f = common_field(*this, o);
    if (!f) return FieldElement(Rational(coords_[0] - o.coords_[0]));
    std::vector<Rational> a = attached_coords(f->degree()), b = o.attached_coords(f->degree());
    for (size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
    return FieldElement(f, std::move(a));
}

FieldElement FieldElement::operator-() const {
    FieldElement r(*this);
    for (Rational& c : r.coords_) c = Rational(-c);
    return r;
}

FieldElement FieldElement::operator*(const FieldElement& o) const {
    const auto& f = common_field(*this, o);
    if (!f) return FieldElement(Rational(coords_[0] * o.coords_[0]));
    if (!field_ || !o.field_) {
        const FieldElement& el = field_ ? *this : o;
        const Rational& s = field_ ? o.coords_[0] : coords_[0];
        std::vector<Rational> c = el.coords_;
        for (Rational& x : c) x *= s;
        return FieldElement(f, std::move(c));
    }
    size_t h = static_cast<size_t>(f->degree());
    std::vector<Rational> prod(2 * h - 1, Rational(0));
    for (size_t i = 0; i < h; ++i) {
        if (coords_[i] == 0) continue;
        for (size_t j = 0; j < h; ++j) {
            if (o.coords_[j] == 0) continue;
            prod[i + j] += coords_[i] * o.coords_[j];
        }
    }
    f->reduce(prod);
    return FieldElement(f, std::move(prod));
}

FieldElement FieldElement::operator/(const FieldElement& o) const {
    return *this * o.inverse();
}

bool FieldElement::operator==(const FieldElement& o) const {
    const auto& f = common_field(*this, o);
    if (!f) return coords_[0] == o.coords_[0];
    return attached_coords(f->degree()) == o.attached_coords(f->degree());
}

FieldElement FieldElement::inverse() const {
    if (is_zero()) throw math_error("division-by-zero", "inverse of zero");
    if (!field_) return FieldElement(Rational(1 / coords_[0]));
    if (is_rational_valued())
        return FieldElement(field_, {Rational(1 / coords_[0])});

    // Extended Euclid over Q[x]: track u with u*a = r (mod minpoly); the
    // remainder chain ends at a nonzero constant unless the defining
    // polynomial is reducible and a hits a factor.
    std::vector<Rational> r0 = field_->minpoly(), r1 = coords_;
    rp_trim(r1);
    std::vector<Rational> u0 = {Rational(0)}, u1 = {Rational(1)};
    auto scale_sub = [](std::vector<Rational>& t, const std::vector<Rational>& s,
                        const Rational& f, size_t shift) {
        if (t.size() < s.size() + shift) t.resize(s.size() + shift, Rational(0));
        for (size_t i = 0; i < s.size(); ++i) t[i + shift] -= f * s[i];
    };
    while (true) {
        if (r1.empty()) throw math_error("zero-divisor", "element not invertible");
        if (r1.size() == 1) {
            std::vector<Rational> inv = u1;
            for (Rational& c : inv) c /= r1[0];
            inv.resize(static_cast<size_t>(field_->degree()), Rational(0));
            return FieldElement(field_, std::move(inv));
        }
        while (true) {
            rp_trim(r0);
            if (r0.size() < r1.size()) break;
            Rational f = r0.back() / r1.back();
            size_t shift = r0.size() - r1.size();
            scale_sub(r0, r1, f, shift);
            scale_sub(u0, u1, f, shift);
            rp_trim(r0);
        }
        std::swap(r0, r1);
        std::swap(u0, u1);
    }
}

FieldElement FieldElement::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    FieldElement acc(1), base(*this);
    unsigned long k = static_cast<unsigned long>(e);
    while (k > 0) {
        if (k & 1) acc = acc * base;
        k >>= 1;
        if (k) base = base * base;
    }
    return acc;
}

Rational FieldElement::house(mpfr_prec_t prec) const {
    if (!field_ || is_rational_valued())
        return rat_abs(coords_[0]);
    Rational one_plus = Rational(1) + pow2(1 - static_cast<long>(prec));
    for (mpfr_prec_t w = std::max<mpfr_prec_t>(64, prec + 16);; w *= 2) {
        if (w > kPrecCap)
            throw precision_error("precision-exhaustion", "house bound failed to converge");
        std::vector<ComplexBall> roots = field_->embeddings(w);
        Rational ub(0), lb(0);
        for (const ComplexBall& r : roots) {
            ComplexBall v = ball_eval(coords_, r, w);
            Rational u = v.abs_ub(), l = v.abs_lb();
            if (u > ub) ub = u;
            if (l > lb) lb = l;
        }
        if (lb > 0 && ub <= lb * one_plus) return ub;
    }
}

ComplexBall FieldElement::embed(int j, mpfr_prec_t prec) const {
    int h = field_ ? field_->degree() : 1;
    if (j < 0 || j >= h) throw math_error("invalid-embedding", "embedding index out of range");
    if (!field_ || is_rational_valued())
        return ComplexBall::from_rational(coords_[0], Rational(0), prec);
    for (mpfr_prec_t w = prec + 16;; w *= 2) {
        if (w > kPrecCap)
            throw precision_error("precision-exhaustion", "embedding failed to converge");
        ComplexBall root = field_->embeddings(w)[j];
        ComplexBall v = ball_eval(coords_, root, w);
        // accept at a quarter ulp of the output precision, relative to |v|
        bool rz = mpfr_zero_p(v.re().get()), iz = mpfr_zero_p(v.im().get());
        mpfr_exp_t e = 1;
        if (!rz && !iz) e = std::max(mpfr_get_exp(v.re().get()), mpfr_get_exp(v.im().get()));
        else if (!rz) e = mpfr_get_exp(v.re().get());
        else if (!iz) e = mpfr_get_exp(v.im().get());
        Rational r = mpfr_to_rational(v.rad().get());
        if (r <= pow2(e - static_cast<long>(prec) - 2)) return round_ball(v, prec);
    }
}

std::string FieldElement::to_string() const {
    std::string s = "[";
    for (size_t i = 0; i < coords_.size(); ++i) {
        if (i) s += ",";
        s += coords_[i].get_str();
    }
    return s + "]";
}

std::vector<FieldElement> primitive_scaled(const std::vector<FieldElement>& xs) {
    Integer den(1), num(0);
    int sign = 0;
    for (const FieldElement& x : xs)
        for (const Rational& c : x.coords()) den = int_lcm(den, c.get_den());
    for (const FieldElement& x : xs)
        for (const Rational& c : x.coords()) {
            Rational scaled = c * Rational(den);
            num = int_gcd(num, scaled.get_num());
            if (sign == 0) sign = sgn(scaled);
        }
    if (sign == 0) return xs;
    Rational scale = Rational(sign) * Rational(den) / Rational(num);
    std::vector<FieldElement> out;
    out.reserve(xs.size());
    for (const FieldElement& x : xs) out.push_back(scale * x);
    return out;
}

int compare_abs(const FieldElement& x, int j, const Rational& r, mpfr_prec_t cap) {
    return compare_abs_pow(x, 1, j, r, cap);
}

int compare_abs_pow(const FieldElement& x, unsigned long e, int j, const Rational& r,
                    mpfr_prec_t cap) {
    Rational rr = r;
    rr.canonicalize();
    if (x.is_rational_valued()) {
        Rational m = rat_abs(rat_pow(x.rational_value(), static_cast<long>(e)));
        return cmp(m, rr) < 0 ? -1 : (cmp(m, rr) > 0 ? 1 : 0);
    }
    for (mpfr_prec_t w = 96;; w *= 2) {
        ComplexBall b = x.embed(j, w).pow(e);
        if (cmp(b.abs_ub(), rr) < 0) return -1;
        if (cmp(b.abs_lb(), rr) > 0) return 1;
        if (w > cap) return 0;
    }
}

} // namespace transcend
