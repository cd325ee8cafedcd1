#include "transcend/measure.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <memory>
#include <mutex>

#include "transcend/lll.hpp"
#include "transcend/parallel.hpp"

namespace transcend {

namespace {

// log2 of a positive rational, rounded toward -infinity / +infinity.
double log2_down(const Rational& q) {
    Mpfr x = rational_to_mpfr(q, 64, MPFR_RNDD);
    Mpfr l(64);
    mpfr_log2(l.get(), x.get(), MPFR_RNDD);
    return mpfr_get_d(l.get(), MPFR_RNDD);
}

Rational two_pow_neg(unsigned long k) {
    Rational r(1);
    mpz_mul_2exp(r.get_den_mpz_t(), r.get_den().get_mpz_t(), k);
    r.canonicalize();
    return r;
}

void add_to_radius(ComplexBall& b, const Rational& extra) {
    if (extra == 0) return;
    Mpfr t = rational_to_mpfr(extra, ComplexBall::radius_prec, MPFR_RNDU);
    mpfr_add(b.rad().get(), b.rad().get(), t.get(), MPFR_RNDU);
}

// Horner sum of the first `count` series coefficients at the ball point x.
ComplexBall ball_sum(const TruncSeries& s, size_t count, const ComplexBall& x, mpfr_prec_t prec,
                     int embedding) {
    ComplexBall acc(prec);
    for (size_t k = count; k-- > 0;) {
        acc = acc * x + s.coeff(k).embed(embedding, prec);
    }
    return acc;
}

// Exact bound for the factorial-decay tail sum_{n>=T} y^n / n! with y = C*|x|:
// (y^T / T!) * (T+1) / (T+1-y), valid once y < T+1.
std::optional<Rational> factorial_tail(const Rational& y, unsigned long T) {
    Rational t1(static_cast<unsigned long>(T + 1));
    if (!(y < t1)) return std::nullopt;
    Rational head = rat_pow(y, static_cast<long>(T));
    head /= Rational(factorial(T));
    Rational r = head * t1 / (t1 - y);
    return r;
}

// Geometric tail G * y^T / (1 - y) for 0 <= y < 1.
std::optional<Rational> geometric_tail(const Rational& G, const Rational& y, unsigned long T) {
    if (!(y < 1)) return std::nullopt;
    return Rational(G * rat_pow(y, static_cast<long>(T)) / (Rational(1) - y));
}

ComplexBall exact_point(const FieldElement& v, mpfr_prec_t prec, int embedding) {
    if (v.is_rational_valued())
        return ComplexBall::from_rational(v.rational_value(), Rational(0), prec);
    return v.embed(embedding, prec);
}

// Non-rigorous evaluation: sum to two truncation orders and inflate the radius
// by 16x their gap.
ComplexBall heuristic_sum(const FunctionSpec& f, const FieldElement& alpha, mpfr_prec_t prec,
                          int embedding) {
    size_t T = static_cast<size_t>(std::max<mpfr_prec_t>(32, prec));
    mpfr_prec_t wprec = prec + 64;
    ComplexBall x = alpha.embed(embedding, wprec);
    TruncSeries s = extend_series(f, 2 * T);
    ComplexBall s1 = ball_sum(s, T, x, wprec, embedding);
    ComplexBall s2 = ball_sum(s, 2 * T, x, wprec, embedding);
    Rational gap = (s2 - s1).abs_ub() * Rational(16);
    add_to_radius(s2, gap);
    return round_ball(s2, prec);
}

// Certified sum of a coefficient-bounded power series with factorial decay:
// |sigma(c_n)| <= C^n / n!.
ComplexBall differential_sum(const FunctionSpec& f, const FieldElement& alpha, mpfr_prec_t prec,
                             int embedding) {
    if (!f.growth_C)
        throw math_error("tail-bound-unavailable",
                         "no coefficient growth bound declared for " +
                             (f.name.empty() ? std::string("function") : f.name));
    mpfr_prec_t wprec = prec + 64;
    ComplexBall x = alpha.embed(embedding, wprec);
    Rational y = *f.growth_C * x.abs_ub();
    Rational target = two_pow_neg(static_cast<unsigned long>(prec) + 8);
    unsigned long T = 16;
    for (;;) {
        auto tail = factorial_tail(y, T);
        if (tail && *tail <= target) break;
        T *= 2;
        if (T > (1ul << 22))
            throw precision_error("precision-exhaustion", "series tail does not certify");
    }
    TruncSeries s = extend_series(f, T);
    ComplexBall acc = ball_sum(s, T, x, wprec, embedding);
    add_to_radius(acc, *factorial_tail(y, T));
    return round_ball(acc, prec);
}

// Certified sum of a radix series with house(c_n) <= G * B^n at a point whose
// modulus is certified below 1/B (callers arrange |point| < 1/(2B)).
ComplexBall radix_sum(const FunctionSpec& f, const FieldElement& point, mpfr_prec_t prec,
                      int embedding) {
    mpfr_prec_t wprec = prec + 64;
    ComplexBall x = point.embed(embedding, wprec);
    Rational y = *f.growth_B * x.abs_ub();
    if (!(y < 1))
        throw precision_error("precision-exhaustion",
                              "radix series point too close to the unit circle");
    Rational target = two_pow_neg(static_cast<unsigned long>(prec) + 8);
    unsigned long T = 16;
    for (;;) {
        auto tail = geometric_tail(*f.growth_G, y, T);
        if (tail && *tail <= target) break;
        T *= 2;
        if (T > (1ul << 22))
            throw precision_error("precision-exhaustion", "series tail does not certify");
    }
    TruncSeries s = extend_series(f, T);
    ComplexBall acc = ball_sum(s, T, x, wprec, embedding);
    add_to_radius(acc, *geometric_tail(*f.growth_G, y, T));
    return round_ball(acc, prec);
}

ComplexBall mahler_point(const FunctionSpec& f, const FieldElement& alpha, mpfr_prec_t prec,
                         int embedding) {
    if (!f.growth_B || !f.growth_G)
        throw math_error("tail-bound-unavailable",
                         "no coefficient growth bound declared for " +
                             (f.name.empty() ? std::string("function") : f.name));
    if (compare_abs(alpha, embedding, Rational(1)) >= 0)
        throw math_error("outside-unit-disk", "radix evaluation needs |alpha| < 1");
    Rational B = *f.growth_B;
    if (B < 1) B = 1;
    Rational rho = Rational(1) / (Rational(2) * B);
    if (compare_abs(alpha, embedding, rho) < 0) return radix_sum(f, alpha, prec, embedding);

    // Pull the point inside the fast-convergence disk through the functional
    // equation: Y(z^q) = A(z) Y(z) with Y = (f(z), ..., f(z^(q^(m-1)))).
    long ell = choose_ell(rho, alpha, f.q, embedding);
    int mo = f.order();
    LinearSystemSpec sys = companion(f);

    // exact transfer matrix A(alpha^(q^(ell-1))) ... A(alpha)
    Matrix<FieldElement> W;
    FieldElement gamma = alpha;
    Integer qpow(1);
    for (long i = 0; i < ell; ++i) {
        FieldElement tv = sys.T.eval<FieldElement>(gamma);
        if (tv.is_zero())
            throw math_error("pull-back-singular", "denominator vanishes along the orbit");
        FieldElement tinv = tv.inverse();
        Matrix<FieldElement> A(mo, std::vector<FieldElement>(mo));
        for (int r = 0; r < mo; ++r)
            for (int c = 0; c < mo; ++c) A[r][c] = sys.N[r][c].eval<FieldElement>(gamma) * tinv;
        W = (i == 0) ? A : matrix_mul(A, W);
        gamma = gamma.pow(f.q);
        qpow *= f.q;
        if (!qpow.fits_slong_p())
            throw math_error("pull-back-singular", "orbit exponent overflows");
    }
    Matrix<FieldElement> Winv;
    try {
        Winv = matrix_inverse(W);
    } catch (const error&) {
        throw math_error("pull-back-singular", "transfer matrix is singular along the orbit");
    }

    // beta_k = alpha^(q^(ell+k)) all lie inside the fast disk
    mpfr_prec_t wprec = prec + 64;
    ComplexBall acc(wprec);
    FieldElement beta = gamma; // alpha^(q^ell)
    for (int k = 0; k < mo; ++k) {
        ComplexBall fk = radix_sum(f, beta, wprec, embedding);
        acc = acc + exact_point(Winv[0][k], wprec, embedding) * fk;
        if (k + 1 < mo) beta = beta.pow(f.q);
    }
    return round_ball(acc, prec);
}

} // namespace

ComplexBall eval_at(const FunctionSpec& f, const FieldElement& alpha, mpfr_prec_t precision,
                    TailMode mode, int embedding) {
    f.validate();
    if (precision < 8) throw usage_error("bad-precision", "need at least 8 bits");
    if (alpha.is_zero()) {
        FieldElement c0 = extend_series(f, 1).coeff(0);
        return exact_point(c0, precision, embedding);
    }
    if (mode == TailMode::heuristic) return heuristic_sum(f, alpha, precision, embedding);
    if (f.kind == SystemKind::differential) return differential_sum(f, alpha, precision, embedding);
    return mahler_point(f, alpha, precision, embedding);
}

ValueVector ValueVector::at_precision(mpfr_prec_t prec) const {
    ValueVector v = *this;
    v.precision = prec;
    if (v.omega.empty()) return v;
    v.omega[0] = ComplexBall::exact_integer(1, prec);
    for (size_t i = 1; i < v.omega.size(); ++i) {
        if (exact[i]) {
            v.omega[i] = ComplexBall::from_rational(*exact[i], Rational(0), prec);
        } else if (source.size() == omega.size() - 1) {
            v.omega[i] = eval_at(source[i - 1], alpha, prec, mode, embedding);
        } else {
            v.omega[i] = round_ball(omega[i], prec);
        }
    }
    return v;
}

ValueVector make_value_vector(const std::vector<FunctionSpec>& f, const FieldElement& alpha,
                              mpfr_prec_t precision, TailMode mode, int t, int embedding) {
    if (f.empty()) throw usage_error("bad-argument", "need at least one function");
    if (t < 1) throw usage_error("bad-argument", "instance exponent t must be >= 1");
    ValueVector v;
    v.alpha = alpha;
    v.precision = precision;
    v.mode = mode;
    v.t = t;
    v.embedding = embedding;
    v.source = f;
    v.omega.push_back(ComplexBall::exact_integer(1, precision));
    v.exact.push_back(Rational(1));
    for (const auto& fn : f) {
        v.omega.push_back(eval_at(fn, alpha, precision, mode, embedding));
        std::optional<Rational> ex;
        if (alpha.is_zero()) {
            FieldElement c0 = extend_series(fn, 1).coeff(0);
            if (c0.is_rational_valued()) ex = c0.rational_value();
        }
        v.exact.push_back(ex);
    }
    return v;
}

ValueVector rational_value_vector(const Rational& xi, mpfr_prec_t precision) {
    ValueVector v;
    v.alpha = FieldElement(xi);
    v.precision = precision;
    v.omega.push_back(ComplexBall::exact_integer(1, precision));
    v.exact.push_back(Rational(1));
    v.omega.push_back(ComplexBall::from_rational(xi, Rational(0), precision));
    v.exact.push_back(xi);
    return v;
}

namespace {

MultiPoly<FieldElement> to_field_poly(const MultiPoly<Integer>& P) {
    MultiPoly<FieldElement> r(P.vars());
    for (const auto& [e, c] : P.terms()) r.add_term(e, FieldElement(Rational(c)));
    return r;
}

bool reduces_to_zero(const MultiPoly<Integer>& P,
                     const std::vector<MultiPoly<FieldElement>>& relations) {
    if (relations.empty()) return false;
    return normal_form(to_field_poly(P), relations, MonomialOrder::grlex).is_zero();
}

ComplexBall zero_ball(mpfr_prec_t prec) { return ComplexBall(prec); }

} // namespace

PolyValue poly_value(const MultiPoly<Integer>& P, const ValueVector& omega) {
    size_t m = omega.m();
    if (m == 0) throw usage_error("bad-argument", "empty value vector");
    if (P.vars() != static_cast<int>(m))
        throw usage_error("dimension-mismatch", "polynomial arity does not match value vector");
    if (P.is_zero()) return PolyValue{zero_ball(omega.precision), ValueStatus::certified_zero};

    bool all_exact = true;
    for (size_t i = 1; i <= m; ++i)
        if (!omega.exact[i]) all_exact = false;
    if (all_exact) {
        Rational v(0);
        for (const auto& [e, c] : P.terms()) {
            Rational t(c);
            for (size_t i = 0; i < m; ++i)
                if (e[i] > 0) t *= rat_pow(*omega.exact[i + 1], e[i]);
            v += t;
        }
        if (v == 0) return PolyValue{zero_ball(omega.precision), ValueStatus::certified_zero};
        return PolyValue{ComplexBall::from_rational(v, Rational(0), omega.precision),
                         ValueStatus::nonzero};
    }

    ComplexBall acc(omega.precision);
    for (const auto& [e, c] : P.terms()) {
        ComplexBall t = ComplexBall::exact_integer(1, omega.precision);
        for (size_t i = 0; i < m; ++i)
            if (e[i] > 0) t = t * omega.omega[i + 1].pow(static_cast<unsigned long>(e[i]));
        acc = acc + t.scaled(Rational(c));
    }
    if (acc.abs_lb() > 0) return PolyValue{acc, ValueStatus::nonzero};
    if (reduces_to_zero(P, omega.value_relations))
        return PolyValue{zero_ball(omega.precision), ValueStatus::certified_zero};
    return PolyValue{acc, ValueStatus::undetermined_zero};
}

// ---------------------------------------------------------------------------
// scan machinery
// ---------------------------------------------------------------------------

namespace {

struct PerHeight {
    bool any = false;
    double min_lb = 0, max_lb = 0;
    ScanRecord min_rec, max_rec;
};

struct ChunkResult {
    std::vector<PerHeight> byh;
    std::vector<ScanRecord> zeros;
    unsigned long long total = 0, nonzero = 0, zcount = 0;
};

struct Classified {
    ValueStatus status = ValueStatus::nonzero;
    double lb_log2 = 0;
};

// Shared evaluation context: basis monomial values at the base precision plus
// a lazily built ladder of doubled precisions for records whose ball straddles
// zero.  Levels are cached under a mutex so parallel chunks stay coherent.
struct ScanCtx {
    const ValueVector& base;
    MonomialBasis basis;
    double d_norm; // d^t
    int d;

    bool exact_mode = false;
    std::vector<Rational> mono_exact;

    bool can_recompute = false;
    static constexpr int max_level = 3;

    struct Level {
        ValueVector vv;
        std::vector<ComplexBall> monos;
    };
    std::mutex mu;
    std::array<std::shared_ptr<const Level>, max_level + 1> levels;

    ScanCtx(const ValueVector& omega, int dd)
        : base(omega), basis(static_cast<int>(omega.m()), dd), d(dd) {
        size_t m = omega.m();
        if (m == 0) throw usage_error("bad-argument", "empty value vector");
        if (dd < 1) throw usage_error("bad-degree", "degree bound must be >= 1");
        if (omega.t < 1) throw usage_error("bad-argument", "instance exponent t must be >= 1");
        d_norm = int_pow(Integer(dd), static_cast<unsigned long>(omega.t)).get_d();

        exact_mode = true;
        for (size_t i = 1; i <= m; ++i)
            if (!omega.exact[i]) exact_mode = false;
        if (exact_mode) {
            mono_exact.resize(basis.size());
            for (size_t i = 0; i < basis.size(); ++i) {
                const Exponents& e = basis.exponent(i);
                Rational v(1);
                for (size_t j = 0; j < m; ++j)
                    if (e[j] > 0) v *= rat_pow(*omega.exact[j + 1], e[j]);
                mono_exact[i] = v;
            }
        }
        can_recompute = true;
        for (size_t i = 1; i <= m; ++i)
            if (!omega.exact[i] && omega.source.size() != m) can_recompute = false;
    }

    std::shared_ptr<const Level> level(int k) {
        std::lock_guard<std::mutex> lock(mu);
        if (!levels[k]) {
            auto lv = std::make_shared<Level>();
            lv->vv = (k == 0) ? base : base.at_precision(base.precision << k);
            lv->monos.resize(basis.size());
            size_t m = base.m();
            for (size_t i = 0; i < basis.size(); ++i) {
                const Exponents& e = basis.exponent(i);
                ComplexBall v = ComplexBall::exact_integer(1, lv->vv.precision);
                for (size_t j = 0; j < m; ++j)
                    if (e[j] > 0)
                        v = v * lv->vv.omega[j + 1].pow(static_cast<unsigned long>(e[j]));
                lv->monos[i] = v;
            }
            levels[k] = lv;
        }
        return levels[k];
    }

    // Full-rigor classification of one coefficient vector, escalating the
    // working precision until the value ball separates from zero or the
    // relation ideal certifies the zero.
    Classified classify(const std::vector<long>& c) {
        if (exact_mode) {
            Rational v(0);
            for (size_t i = 0; i < c.size(); ++i)
                if (c[i] != 0) v += Rational(c[i]) * mono_exact[i];
            if (v == 0) return {ValueStatus::certified_zero, 0};
            return {ValueStatus::nonzero, log2_down(rat_abs(v))};
        }
        bool checked_ideal = false;
        for (int k = 0; k <= max_level; ++k) {
            auto lv = level(k);
            ComplexBall acc(lv->vv.precision);
            for (size_t i = 0; i < c.size(); ++i)
                if (c[i] != 0) acc = acc + lv->monos[i].scaled_si(c[i]);
            Rational lb = acc.abs_lb();
            if (lb > 0) return {ValueStatus::nonzero, log2_down(lb)};
            if (!checked_ideal) {
                checked_ideal = true;
                MultiPoly<Integer> P(static_cast<int>(base.m()));
                for (size_t i = 0; i < c.size(); ++i)
                    if (c[i] != 0) P.add_term(basis.exponent(i), Integer(c[i]));
                if (reduces_to_zero(P, base.value_relations))
                    return {ValueStatus::certified_zero, 0};
            }
            if (!can_recompute) break;
        }
        throw precision_error("precision-insufficient",
                              "value ball straddles zero at the maximum scan precision");
    }
};

ScanRecord make_record(std::vector<long> coeffs, int degree, long height, double lb,
                       double d_norm, ValueStatus status) {
    ScanRecord r;
    r.coeffs = std::move(coeffs);
    r.degree = degree;
    r.height = height;
    if (status == ValueStatus::nonzero) {
        r.log2_abs = lb;
        r.exponent = height >= 2 ? -lb / (d_norm * std::log2(static_cast<double>(height))) : 0;
    }
    r.status = status;
    return r;
}

void tally(ChunkResult& r, ScanRecord&& rec,
           const std::function<void(const ScanRecord&)>* sink) {
    ++r.total;
    if (sink && *sink) (*sink)(rec);
    if (rec.status != ValueStatus::nonzero) {
        ++r.zcount;
        if (r.zeros.size() < MeasureReport::zero_cap) r.zeros.push_back(std::move(rec));
        return;
    }
    ++r.nonzero;
    PerHeight& ph = r.byh[rec.height];
    if (!ph.any) {
        ph.any = true;
        ph.min_lb = ph.max_lb = rec.log2_abs;
        ph.min_rec = rec;
        ph.max_rec = std::move(rec);
        return;
    }
    if (rec.log2_abs < ph.min_lb) {
        ph.min_lb = rec.log2_abs;
        ph.min_rec = rec;
    }
    if (rec.log2_abs > ph.max_lb) {
        ph.max_lb = rec.log2_abs;
        ph.max_rec = std::move(rec);
    }
}

void merge_into(ChunkResult& acc, ChunkResult&& c) {
    if (acc.byh.empty()) acc.byh.resize(c.byh.size());
    for (size_t h = 0; h < c.byh.size(); ++h) {
        PerHeight& a = acc.byh[h];
        PerHeight& b = c.byh[h];
        if (!b.any) continue;
        if (!a.any) {
            a = std::move(b);
            continue;
        }
        if (b.min_lb < a.min_lb) {
            a.min_lb = b.min_lb;
            a.min_rec = std::move(b.min_rec);
        }
        if (b.max_lb > a.max_lb) {
            a.max_lb = b.max_lb;
            a.max_rec = std::move(b.max_rec);
        }
    }
    for (auto& z : c.zeros)
        if (acc.zeros.size() < MeasureReport::zero_cap) acc.zeros.push_back(std::move(z));
    acc.total += c.total;
    acc.nonzero += c.nonzero;
    acc.zcount += c.zcount;
}

// ---- fast path: one variable, degree one, real value -----------------------

// Exact rational value xi = n/dd with all intermediate integers in int64.
ChunkResult fast_exact_range(ScanCtx& ctx, long H, long a_lo, long a_hi, long n, long dd,
                             double log2dd,
                             const std::function<void(const ScanRecord&)>* sink) {
    ChunkResult r;
    r.byh.resize(static_cast<size_t>(H) + 1);
    for (long a = a_lo; a <= a_hi; ++a) {
        long b_lo = (a >= 1) ? 0 : 1;
        long long num = static_cast<long long>(a) * n + static_cast<long long>(b_lo) * dd;
        for (long b = b_lo; b <= H; ++b, num += dd) {
            long h = std::max(std::abs(a), std::abs(b));
            int deg = a != 0 ? 1 : 0;
            if (num == 0) {
                tally(r, make_record({b, a}, deg, h, 0, ctx.d_norm, ValueStatus::certified_zero),
                      sink);
                continue;
            }
            double lb = std::log2(static_cast<double>(std::abs(num))) - log2dd;
            tally(r, make_record({b, a}, deg, h, lb, ctx.d_norm, ValueStatus::nonzero), sink);
        }
    }
    return r;
}

// Real ball value: 64-bit midpoint screening with a conservative double error
// budget; anything that fails the screen goes through the rigorous ladder.
ChunkResult fast_ball_range(ScanCtx& ctx, long H, long a_lo, long a_hi,
                            const std::function<void(const ScanRecord&)>* sink) {
    ChunkResult r;
    r.byh.resize(static_cast<size_t>(H) + 1);
    mpfr_srcptr x = ctx.base.omega[1].re().get();
    double rad_ub = mpfr_get_d(ctx.base.omega[1].rad().get(), MPFR_RNDU);
    const double slack_up = 1.0 + std::ldexp(1.0, -40);
    const double slack_dn = 1.0 - std::ldexp(1.0, -40);
    Mpfr t(64), v(64);
    std::vector<long> cbuf(2);
    for (long a = a_lo; a <= a_hi; ++a) {
        double err_a = std::fabs(static_cast<double>(a)) * rad_ub;
        if (a != 0) {
            mpfr_mul_si(t.get(), x, a, MPFR_RNDN);
            if (!mpfr_zero_p(t.get()))
                err_a += std::ldexp(1.0, static_cast<int>(
                                             std::max<long>(-1000, mpfr_get_exp(t.get()) - 62)));
        } else {
            mpfr_set_zero(t.get(), 1);
        }
        long b_lo = (a >= 1) ? 0 : 1;
        for (long b = b_lo; b <= H; ++b) {
            long h = std::max(std::abs(a), std::abs(b));
            int deg = a != 0 ? 1 : 0;
            mpfr_add_si(v.get(), t.get(), b, MPFR_RNDN);
            double lb = -1;
            if (!mpfr_zero_p(v.get())) {
                long e;
                double dm = mpfr_get_d_2exp(&e, v.get(), MPFR_RNDN);
                if (e > -1000 && e < 1000) {
                    double av = std::ldexp(std::fabs(dm), static_cast<int>(e));
                    double err = (err_a + std::ldexp(1.0, static_cast<int>(e) - 62)) * slack_up;
                    lb = (av - err) * slack_dn;
                }
            }
            if (lb > 0) {
                tally(r, make_record({b, a}, deg, h, std::log2(lb), ctx.d_norm,
                                     ValueStatus::nonzero),
                      sink);
                continue;
            }
            cbuf[0] = b;
            cbuf[1] = a;
            Classified cl = ctx.classify(cbuf);
            tally(r, make_record({b, a}, deg, h, cl.lb_log2, ctx.d_norm, cl.status), sink);
        }
    }
    return r;
}

// ---- general path: canonical odometer over the coefficient box -------------

struct Walker {
    ScanCtx& ctx;
    long H;
    const std::function<void(const ScanRecord&)>* sink;
    ChunkResult out;

    std::vector<long> c;
    std::vector<int> degv;
    std::vector<Rational> rpartial;
    std::vector<ComplexBall> bpartial;
    std::shared_ptr<const ScanCtx::Level> lv;

    Walker(ScanCtx& cx, long Hh, const std::function<void(const ScanRecord&)>* sk)
        : ctx(cx), H(Hh), sink(sk) {
        size_t p = ctx.basis.size();
        out.byh.resize(static_cast<size_t>(H) + 1);
        c.assign(p, 0);
        degv.resize(p);
        for (size_t i = 0; i < p; ++i) degv[i] = total_degree(ctx.basis.exponent(i));
        if (ctx.exact_mode) {
            rpartial.assign(p + 1, Rational(0));
        } else {
            lv = ctx.level(0);
            bpartial.assign(p + 1, ComplexBall(lv->vv.precision));
        }
    }

    void leaf(bool allzero, int maxdeg) {
        if (allzero) return;
        long h = 0;
        for (long ci : c) h = std::max(h, std::abs(ci));
        if (ctx.exact_mode) {
            const Rational& v = rpartial[c.size()];
            if (v == 0) {
                tally(out, make_record(c, maxdeg, h, 0, ctx.d_norm, ValueStatus::certified_zero),
                      sink);
                return;
            }
            tally(out,
                  make_record(c, maxdeg, h, log2_down(rat_abs(v)), ctx.d_norm,
                              ValueStatus::nonzero),
                  sink);
            return;
        }
        Rational lb = bpartial[c.size()].abs_lb();
        if (lb > 0) {
            tally(out,
                  make_record(c, maxdeg, h, log2_down(lb), ctx.d_norm, ValueStatus::nonzero),
                  sink);
            return;
        }
        Classified cl = ctx.classify(c);
        tally(out, make_record(c, maxdeg, h, cl.lb_log2, ctx.d_norm, cl.status), sink);
    }

    void descend(size_t j, bool allzero, int maxdeg) {
        if (j == c.size()) {
            leaf(allzero, maxdeg);
            return;
        }
        long lo = allzero ? 0 : -H;
        for (long cj = lo; cj <= H; ++cj) {
            c[j] = cj;
            if (ctx.exact_mode) {
                rpartial[j + 1] =
                    cj == 0 ? rpartial[j] : Rational(rpartial[j] + Rational(cj) * ctx.mono_exact[j]);
            } else {
                bpartial[j + 1] = cj == 0 ? bpartial[j] : bpartial[j] + lv->monos[j].scaled_si(cj);
            }
            descend(j + 1, allzero && cj == 0, cj != 0 ? std::max(maxdeg, degv[j]) : maxdeg);
        }
        c[j] = 0;
    }

    // enumerate with the leading coefficient fixed (parallel chunk unit)
    void run_first(long c0) {
        c[0] = c0;
        if (ctx.exact_mode) {
            rpartial[1] =
                c0 == 0 ? rpartial[0] : Rational(rpartial[0] + Rational(c0) * ctx.mono_exact[0]);
        } else {
            bpartial[1] = c0 == 0 ? bpartial[0] : bpartial[0] + lv->monos[0].scaled_si(c0);
        }
        descend(1, c0 == 0, c0 != 0 ? degv[0] : -1);
    }
};

// Splits [lo, hi] into at most `parts` contiguous blocks.
std::vector<std::pair<long, long>> split_range(long lo, long hi, size_t parts) {
    std::vector<std::pair<long, long>> out;
    long n = hi - lo + 1;
    if (n <= 0) return out;
    size_t k = std::min<size_t>(parts, static_cast<size_t>(n));
    long base = n / static_cast<long>(k), rem = n % static_cast<long>(k);
    long cur = lo;
    for (size_t i = 0; i < k; ++i) {
        long len = base + (static_cast<long>(i) < rem ? 1 : 0);
        out.push_back({cur, cur + len - 1});
        cur += len;
    }
    return out;
}

bool fast_path_applies(const ScanCtx& ctx) {
    return ctx.base.m() == 1 && ctx.d == 1 && ctx.basis.size() == 2 &&
           mpfr_zero_p(ctx.base.omega[1].im().get());
}

ChunkResult run_scan(ScanCtx& ctx, long H, const std::function<void(const ScanRecord&)>* sink) {
    bool sequential = sink && *sink;
    ChunkResult agg;

    if (fast_path_applies(ctx)) {
        long n = 0, dd = 0;
        bool use_exact = false;
        if (ctx.exact_mode) {
            const Rational& xi = *ctx.base.exact[1];
            if (xi.get_num().fits_slong_p() && xi.get_den().fits_slong_p()) {
                n = xi.get_num().get_si();
                dd = xi.get_den().get_si();
                double limit = std::ldexp(1.0, 62);
                if (static_cast<double>(H) * (std::fabs(static_cast<double>(n)) + dd) < limit)
                    use_exact = true;
            }
        }
        double log2dd = use_exact ? std::log2(static_cast<double>(dd)) : 0;
        auto blocks = split_range(-H, H, sequential ? 1 : std::min<size_t>(64, worker_count() * 4));
        auto work = [&](size_t i) {
            return use_exact ? fast_exact_range(ctx, H, blocks[i].first, blocks[i].second, n, dd,
                                                log2dd, sink)
                             : fast_ball_range(ctx, H, blocks[i].first, blocks[i].second, sink);
        };
        if (sequential) {
            for (size_t i = 0; i < blocks.size(); ++i) merge_into(agg, work(i));
        } else {
            auto parts = parallel_map<ChunkResult>(blocks.size(), work);
            for (auto& p : parts) merge_into(agg, std::move(p));
        }
        return agg;
    }

    // general path: guard the box size, then odometer over canonical vectors
    size_t p = ctx.basis.size();
    Integer box = int_pow(Integer(2 * H + 1), static_cast<unsigned long>(p));
    if (box > Integer(1) << 24)
        throw usage_error("scan-too-large",
                          "coefficient box exceeds 2^24 vectors; reduce height or degree");
    auto blocks = split_range(0, H, sequential ? 1 : std::min<size_t>(64, worker_count() * 4));
    auto work = [&](size_t i) {
        Walker w(ctx, H, sink);
        for (long c0 = blocks[i].first; c0 <= blocks[i].second; ++c0) w.run_first(c0);
        return std::move(w.out);
    };
    if (sequential) {
        for (size_t i = 0; i < blocks.size(); ++i) merge_into(agg, work(i));
    } else {
        auto parts = parallel_map<ChunkResult>(blocks.size(), work);
        for (auto& p2 : parts) merge_into(agg, std::move(p2));
    }
    return agg;
}

// LLL-seeded candidates: short vectors of the lattice spanned by
// [ e_i | round(S*Re M_i) | round(S*Im M_i) ].  Candidates inside the
// exhaustive box are skipped; taller ones are probed rigorously.
size_t lattice_probe(ScanCtx& ctx, long H, ChunkResult& agg) {
    size_t p = ctx.basis.size();
    mpfr_prec_t prec = ctx.base.precision;
    Integer S = int_pow(Integer(2), static_cast<unsigned long>(std::max<mpfr_prec_t>(16, prec - 8)));
    Matrix<Integer> B(p, std::vector<Integer>(p + 2, Integer(0)));
    for (size_t i = 0; i < p; ++i) {
        B[i][i] = 1;
        Rational re, im;
        if (ctx.exact_mode) {
            re = ctx.mono_exact[i];
        } else {
            auto lv = ctx.level(0);
            re = mpfr_to_rational(lv->monos[i].re().get());
            im = mpfr_to_rational(lv->monos[i].im().get());
        }
        B[i][p] = round_nearest(Rational(S) * re);
        B[i][p + 1] = round_nearest(Rational(S) * im);
    }
    Matrix<Integer> R = lll_reduce(B);

    size_t probed = 0;
    for (const auto& row : R) {
        std::vector<long> c(p, 0);
        bool ok = true, zero = true;
        int sign = 0;
        long h = 0;
        int maxdeg = -1;
        for (size_t i = 0; i < p && ok; ++i) {
            if (!row[i].fits_slong_p()) {
                ok = false;
                break;
            }
            c[i] = row[i].get_si();
            if (c[i] != 0) {
                if (sign == 0) sign = c[i] > 0 ? 1 : -1;
                zero = false;
                h = std::max(h, std::abs(c[i]));
                maxdeg = std::max(maxdeg, total_degree(ctx.basis.exponent(i)));
            }
        }
        if (!ok || zero) continue;
        if (sign < 0)
            for (auto& ci : c) ci = -ci;
        if (h <= H) continue; // already covered by the exhaustive core
        ++probed;
        Classified cl = ctx.classify(c);
        ++agg.total;
        if (cl.status != ValueStatus::nonzero) {
            ++agg.zcount;
            if (agg.zeros.size() < MeasureReport::zero_cap)
                agg.zeros.push_back(make_record(c, maxdeg, h, 0, ctx.d_norm, cl.status));
        } else {
            ++agg.nonzero;
        }
    }
    return probed;
}

} // namespace

MeasureReport liouville_scan(const ValueVector& omega, int d, long H_max, ScanStrategy strategy,
                             unsigned long long seed,
                             const std::function<void(const ScanRecord&)>& sink) {
    if (H_max < 1) throw usage_error("bad-height", "height bound must be >= 1");
    ScanCtx ctx(omega, d);
    ChunkResult agg = run_scan(ctx, H_max, &sink);

    MeasureReport rep;
    rep.d = d;
    rep.t = omega.t;
    rep.H_max = H_max;
    rep.strategy = strategy;
    rep.precision = omega.precision;
    rep.seed = seed;
    if (strategy == ScanStrategy::lattice) rep.lattice_candidates = lattice_probe(ctx, H_max, agg);
    rep.total_records = static_cast<size_t>(agg.total);
    rep.nonzero_records = static_cast<size_t>(agg.nonzero);
    rep.zero_records = static_cast<size_t>(agg.zcount);
    rep.zeros = std::move(agg.zeros);

    // exponent extremes over heights >= 2, then the fitted constants
    bool have_exp = false;
    for (long h = 2; h <= H_max; ++h) {
        const PerHeight& ph = agg.byh[h];
        if (!ph.any) continue;
        double lh = ctx.d_norm * std::log2(static_cast<double>(h));
        double emax = -ph.min_lb / lh;
        double emin = -ph.max_lb / lh;
        if (!have_exp || emax > rep.max_exponent) {
            rep.max_exponent = emax;
            rep.max_record = ph.min_rec;
        }
        if (!have_exp || emin < rep.min_exponent) {
            rep.min_exponent = emin;
            rep.min_record = ph.max_rec;
        }
        have_exp = true;
    }
    rep.c2 = have_exp ? std::max(rep.max_exponent, 0.0) : 0.0;

    bool have_c1 = false;
    for (long h = 1; h <= H_max; ++h) {
        const PerHeight& ph = agg.byh[h];
        if (!ph.any) continue;
        double cand = ph.min_lb + rep.c2 * ctx.d_norm * std::log2(static_cast<double>(h));
        if (!have_c1 || cand < rep.c1_log2) {
            rep.c1_log2 = cand;
            rep.c1_record = ph.min_rec;
            have_c1 = true;
        }
    }
    rep.c1 = have_c1 ? std::exp2(rep.c1_log2) : 0.0;
    return rep;
}

WdReport estimate_wd(const ValueVector& omega, int d, const std::vector<long>& schedule) {
    if (schedule.empty()) throw usage_error("bad-schedule", "empty height schedule");
    for (size_t i = 0; i < schedule.size(); ++i) {
        if (schedule[i] < 2) throw usage_error("bad-schedule", "schedule entries must be >= 2");
        if (i > 0 && schedule[i] <= schedule[i - 1])
            throw usage_error("bad-schedule", "schedule must be strictly increasing");
    }
    ScanCtx ctx(omega, d);
    long Hmax = schedule.back();
    ChunkResult agg = run_scan(ctx, Hmax, nullptr);

    WdReport rep;
    rep.d = d;
    rep.t = omega.t;
    rep.precision = omega.precision;
    rep.schedule = schedule;
    rep.zero_records = static_cast<size_t>(agg.zcount);
    rep.zeros = std::move(agg.zeros);

    size_t j = 0;
    bool have = false;
    double runmin = 0;
    for (long h = 1; h <= Hmax && j < schedule.size(); ++h) {
        if (agg.byh[h].any) {
            if (!have || agg.byh[h].min_lb < runmin) runmin = agg.byh[h].min_lb;
            have = true;
        }
        while (j < schedule.size() && schedule[j] == h) {
            double raw =
                have ? -runmin / (ctx.d_norm * std::log2(static_cast<double>(h))) : 0.0;
            rep.raw.push_back(raw);
            rep.cumulative.push_back(rep.cumulative.empty()
                                         ? raw
                                         : std::max(rep.cumulative.back(), raw));
            ++j;
        }
    }
    rep.estimate = rep.raw.back();
    return rep;
}

ReferenceC2 reference_c2(long m, long h, mpfr_prec_t prec) {
    if (m < 1 || h < 1) throw usage_error("bad-argument", "need m >= 1 and h >= 1");
    ReferenceC2 out;
    Integer scale = int_pow(Integer(4), static_cast<unsigned long>(m)) *
                    int_pow(Integer(h), static_cast<unsigned long>(m) + 1);
    Integer mi(m);
    if (mpz_perfect_square_p(mi.get_mpz_t())) {
        Integer root;
        mpz_sqrt(root.get_mpz_t(), mi.get_mpz_t());
        out.exact = Rational(root * scale);
        out.ball = ComplexBall::from_rational(*out.exact, Rational(0), prec);
        return out;
    }
    ComplexBall b(prec);
    mpfr_sqrt_ui(b.re().get(), static_cast<unsigned long>(m), MPFR_RNDN);
    b.absorb_rounding(1);
    out.ball = b.scaled(Rational(scale));
    return out;
}

} // namespace transcend
