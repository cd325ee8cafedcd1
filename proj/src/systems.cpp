#include "transcend/systems.hpp"

#include <algorithm>

#include "transcend/errors.hpp"

namespace transcend {

namespace {

// Falling factorial k(k-1)...(k-j+1) as an exact rational.
Rational falling(long k, int j) {
    Rational r(1);
    for (int t = 0; t < j; ++t) r *= Rational(k - t);
    return r;
}

long checked_pow_long(long base, int e) {
    long r = 1;
    for (int i = 0; i < e; ++i) {
        if (r > (1L << 55) / base) throw math_error("radix-overflow", "q^ell exceeds range");
        r *= base;
    }
    return r;
}

Poly<FieldElement> poly_pow(const Poly<FieldElement>& p, size_t e) {
    Poly<FieldElement> r = Poly<FieldElement>::constant(FieldElement(1));
    for (size_t i = 0; i < e; ++i) r = r * p;
    return r;
}

// Certified positive lower bound for |sigma_j(x)|, x != 0.
Rational abs_lower(const FieldElement& x, int j) {
    if (x.is_rational_valued()) return rat_abs(x.rational_value());
    for (mpfr_prec_t w = 96;; w *= 2) {
        if (w > (mpfr_prec_t(1) << 20))
            throw precision_error("cannot-certify", "no positive modulus bound reached");
        Rational lb = x.embed(j, w).abs_lb();
        if (sgn(lb) > 0) return lb;
    }
}

Rational abs_upper(const FieldElement& x, int j) {
    if (x.is_rational_valued()) return rat_abs(x.rational_value());
    return x.embed(j, 96).abs_ub();
}

} // namespace

void FunctionSpec::validate() const {
    if (coeffs.size() < 2)
        throw math_error("order-too-small", "equation needs order at least one");
    const Poly<FieldElement>& am = coeffs.back();
    if (am.is_zero()) throw math_error("degenerate-equation", "leading coefficient is zero");
    if (kind == SystemKind::mahler) {
        if (q < 2) throw math_error("invalid-radix", "mahler radix must be at least 2");
        if (coeffs.front().is_zero())
            throw math_error("degenerate-equation", "mahler constant-term coefficient is zero");
    }
}

void LinearSystemSpec::validate() const {
    if (size == 0 || N.size() != size)
        throw math_error("bad-system-shape", "matrix size mismatch");
    for (const auto& row : N)
        if (row.size() != size) throw math_error("bad-system-shape", "matrix row size mismatch");
    if (T.is_zero()) throw math_error("bad-system-shape", "zero denominator");
    if (kind == SystemKind::mahler) {
        if (q < 2) throw math_error("invalid-radix", "mahler radix must be at least 2");
        if (poly_matrix_det(N).is_zero())
            throw math_error("singular-system", "mahler system matrix is singular");
    }
}

Poly<FieldElement> LinearSystemSpec::det_numerator() const {
    Poly<FieldElement> d = poly_matrix_det(N);
    if (d.is_zero()) return d;
    Poly<FieldElement> g = poly_gcd(d, poly_pow(T, size));
    return d.exact_div(g);
}

LinearSystemSpec companion(const FunctionSpec& fn) {
    fn.validate();
    size_t m = fn.coeffs.size() - 1;
    LinearSystemSpec sys;
    sys.kind = fn.kind;
    sys.q = fn.kind == SystemKind::mahler ? fn.q : 0;
    sys.size = m;
    sys.T = fn.coeffs[m];
    sys.N.assign(m, std::vector<Poly<FieldElement>>(m));
    for (size_t i = 0; i + 1 < m; ++i) sys.N[i][i + 1] = sys.T;
    for (size_t j = 0; j < m; ++j) sys.N[m - 1][j] = -fn.coeffs[j];
    sys.validate();
    return sys;
}

LinearSystemSpec direct_sum(const std::vector<LinearSystemSpec>& blocks) {
    if (blocks.empty()) throw math_error("empty-sum", "no blocks given");
    LinearSystemSpec out;
    out.kind = blocks[0].kind;
    out.q = blocks[0].q;
    Poly<FieldElement> L = blocks[0].T;
    size_t total = 0;
    for (const auto& b : blocks) {
        b.validate();
        if (b.kind != out.kind) throw math_error("kind-mismatch", "blocks of different kinds");
        if (out.kind == SystemKind::mahler && b.q != out.q)
            throw math_error("radix-mismatch", "blocks with different radices");
        total += b.size;
    }
    for (size_t i = 1; i < blocks.size(); ++i) {
        Poly<FieldElement> g = poly_gcd(L, blocks[i].T);
        L = (L * blocks[i].T).exact_div(g);
    }
    out.size = total;
    out.T = L;
    out.N.assign(total, std::vector<Poly<FieldElement>>(total));
    size_t off = 0;
    for (const auto& b : blocks) {
        Poly<FieldElement> scale = L.exact_div(b.T);
        for (size_t i = 0; i < b.size; ++i)
            for (size_t j = 0; j < b.size; ++j)
                out.N[off + i][off + j] = b.N[i][j] * scale;
        off += b.size;
    }
    return out;
}

namespace {

TruncSeries extend_differential(const FunctionSpec& fn, size_t order) {
    const auto& a = fn.coeffs;
    int m = fn.order();
    // nu = max over nonzero a_j of (j - val a_j); the equation coefficient of
    // z^n touches series coefficients up to c_{n+nu}.
    long nu = 0;
    bool have = false;
    for (int j = 0; j <= m; ++j) {
        if (a[j].is_zero()) continue;
        long v = j - a[j].valuation();
        if (!have || v > nu) nu = v;
        have = true;
    }
    TruncSeries f(order);
    size_t given = std::min(fn.initial.size(), order);
    for (size_t i = 0; i < given; ++i) f.set_coeff(i, fn.initial[i]);
    for (size_t N = given; N < order; ++N) {
        long n = static_cast<long>(N) - nu;
        if (n < 0)
            throw math_error("insufficient-initial-data",
                             "coefficient " + std::to_string(N) + " is not determined");
        // Pivot multiplier of c_N in the order-n equation coefficient.
        FieldElement pivot(0);
        for (int j = 0; j <= m; ++j) {
            long l = static_cast<long>(j) - nu;
            if (l < 0 || l > a[j].deg()) continue;
            pivot = pivot + falling(static_cast<long>(N), j) * a[j].coeff(l);
        }
        if (pivot.is_zero())
            throw math_error("insufficient-initial-data",
                             "coefficient " + std::to_string(N) + " is not determined");
        FieldElement acc(0);
        for (int j = 0; j <= m; ++j) {
            for (long l = std::max<long>(a[j].valuation(), 0); l <= a[j].deg(); ++l) {
                long k = n + j - l;
                if (k < 0 || k >= static_cast<long>(N) || k < j) continue;
                acc = acc + falling(k, j) * a[j].coeff(l) * f.coeff(k);
            }
        }
        f.set_coeff(N, -(acc / pivot));
    }
    // Residual check over the fully observable window.
    long nmax = static_cast<long>(order) - 1 - std::max<long>(nu, 0);
    for (long n = 0; n <= nmax; ++n) {
        FieldElement acc(0);
        for (int j = 0; j <= m; ++j) {
            for (long l = std::max<long>(a[j].valuation(), 0); l <= a[j].deg(); ++l) {
                long k = n + j - l;
                if (k < 0 || k >= static_cast<long>(order) || k < j) continue;
                acc = acc + falling(k, j) * a[j].coeff(l) * f.coeff(k);
            }
        }
        if (!acc.is_zero())
            throw math_error("inconsistent-initial-data",
                             "equation fails at series index " + std::to_string(n));
    }
    return f;
}

TruncSeries extend_mahler(const FunctionSpec& fn, size_t order) {
    const auto& a = fn.coeffs;
    int m = fn.order();
    long q = fn.q;
    long v0 = a[0].valuation();
    std::vector<long> radix(m + 1, 1);
    for (int j = 1; j <= m; ++j) radix[j] = checked_pow_long(q, j);
    TruncSeries f(order);
    size_t given = std::min(fn.initial.size(), order);
    for (size_t i = 0; i < given; ++i) f.set_coeff(i, fn.initial[i]);
    for (size_t N = given; N < order; ++N) {
        if (static_cast<long>(N) * (q - 1) <= v0)
            throw math_error("insufficient-initial-data",
                             "coefficient " + std::to_string(N) + " is not determined");
        long n = static_cast<long>(N) + v0;
        FieldElement acc(0);
        for (int j = 0; j <= m; ++j) {
            for (long l = std::max<long>(a[j].valuation(), 0); l <= a[j].deg(); ++l) {
                if (j == 0 && l == v0) continue;
                long num = n - l;
                if (num < 0 || num % radix[j] != 0) continue;
                long k = num / radix[j];
                if (k >= static_cast<long>(N)) continue;
                acc = acc + a[j].coeff(l) * f.coeff(k);
            }
        }
        f.set_coeff(N, -(acc / a[0].coeff(v0)));
    }
    for (long n = 0; n < static_cast<long>(order); ++n) {
        FieldElement acc(0);
        for (int j = 0; j <= m; ++j) {
            for (long l = std::max<long>(a[j].valuation(), 0); l <= a[j].deg(); ++l) {
                long num = n - l;
                if (num < 0 || num % radix[j] != 0) continue;
                long k = num / radix[j];
                if (k >= static_cast<long>(order)) continue;
                acc = acc + a[j].coeff(l) * f.coeff(k);
            }
        }
        if (!acc.is_zero())
            throw math_error("inconsistent-initial-data",
                             "equation fails at series index " + std::to_string(n));
    }
    return f;
}

} // namespace

TruncSeries extend_series(const FunctionSpec& fn, size_t order) {
    fn.validate();
    if (order == 0) return TruncSeries(0);
    return fn.kind == SystemKind::differential ? extend_differential(fn, order)
                                               : extend_mahler(fn, order);
}

std::vector<TruncSeries> solution_vector(const FunctionSpec& fn, size_t order) {
    fn.validate();
    size_t m = fn.coeffs.size() - 1;
    std::vector<TruncSeries> out;
    out.reserve(m);
    if (fn.kind == SystemKind::differential) {
        TruncSeries f = extend_series(fn, order + m - 1);
        for (size_t k = 0; k < m; ++k) {
            out.push_back(f.truncated(order));
            if (k + 1 < m) f = f.derivative();
        }
    } else {
        TruncSeries f = extend_series(fn, order);
        long rad = 1;
        for (size_t k = 0; k < m; ++k) {
            out.push_back(k == 0 ? f : f.substitute_zpow(rad, order));
            if (k + 1 < m) rad = checked_pow_long(fn.q, 1) * rad;
        }
    }
    return out;
}

RegularityReport is_regular(const LinearSystemSpec& sys, const FieldElement& alpha,
                            int embedding) {
    sys.validate();
    RegularityReport rep;
    if (sys.kind == SystemKind::differential) {
        bool ok = !sys.T.eval(alpha).is_zero();
        rep.regular = ok;
        rep.witness_n = ok ? -1 : 0;
        return rep;
    }
    if (compare_abs(alpha, embedding, Rational(1)) != -1)
        throw math_error("not-in-unit-disk", "mahler regularity needs |alpha| < 1");
    // Singular set: zeros of S = T * num(det A).
    Poly<FieldElement> S = sys.T * sys.det_numerator();
    long strip = S.valuation();
    std::vector<FieldElement> tail;
    for (long l = strip; l <= S.deg(); ++l) tail.push_back(S.coeff(l));
    Poly<FieldElement> Stail{tail};
    // Cauchy-type certified lower bound on the modulus of nonzero roots, at
    // the chosen embedding; shrink by 2^-10 as the working margin.
    Rational rho_margin;
    if (Stail.deg() == 0) {
        rho_margin = Rational(1); // no nonzero singular points
    } else {
        Rational lb0 = abs_lower(Stail.coeff(0), embedding);
        Rational top(0);
        for (long k = 1; k <= Stail.deg(); ++k) {
            Rational u = abs_upper(Stail.coeff(k), embedding);
            if (cmp(u, top) > 0) top = u;
        }
        rho_margin = lb0 / (lb0 + top) * Rational(1023, 1024);
    }
    FieldElement beta = alpha;
    for (long n = 0;; ++n) {
        if (n > 4096)
            throw precision_error("cannot-certify", "orbit modulus bound never engaged");
        if (n > 0) {
            beta = beta.pow(sys.q);
            if (compare_abs(beta, embedding, rho_margin) == -1) {
                rep.regular = true;
                rep.cutoff_n = n;
                return rep;
            }
        }
        if (!S.eval(beta).is_zero()) continue;
        rep.regular = false;
        rep.witness_n = n;
        return rep;
    }
}

LinearSystemSpec mahler_compose(const LinearSystemSpec& sys, int ell) {
    sys.validate();
    if (sys.kind != SystemKind::mahler)
        throw math_error("kind-mismatch", "composition applies to mahler systems");
    if (ell < 1) throw usage_error("invalid-ell", "ell must be at least 1");
    long qj = checked_pow_long(sys.q, ell - 1);
    auto compose_matrix = [&](long k) {
        Matrix<Poly<FieldElement>> M(sys.size, std::vector<Poly<FieldElement>>(sys.size));
        for (size_t i = 0; i < sys.size; ++i)
            for (size_t j = 0; j < sys.size; ++j) M[i][j] = sys.N[i][j].compose_zpow(k);
        return M;
    };
    Matrix<Poly<FieldElement>> P = compose_matrix(qj);
    Poly<FieldElement> D = sys.T.compose_zpow(qj);
    for (long k = qj / sys.q; k >= 1; k /= sys.q) {
        P = matrix_mul(P, compose_matrix(k));
        D = D * sys.T.compose_zpow(k);
        if (k == 1) break;
    }
    // Cancel any common polynomial factor between the denominator and all
    // numerator entries.
    Poly<FieldElement> g = D;
    for (const auto& row : P) {
        for (const auto& e : row) {
            if (g.deg() <= 0) break;
            g = poly_gcd(g, e);
        }
    }
    LinearSystemSpec out;
    out.kind = SystemKind::mahler;
    out.q = checked_pow_long(sys.q, ell);
    out.size = sys.size;
    if (g.deg() > 0) {
        D = D.exact_div(g);
        for (auto& row : P)
            for (auto& e : row) e = e.exact_div(g);
    }
    out.N = std::move(P);
    out.T = D;
    out.validate();
    return out;
}

long choose_ell(const Rational& rho, const FieldElement& alpha, long q, int embedding) {
    Rational r = rho;
    r.canonicalize();
    if (sgn(r) <= 0) throw math_error("invalid-threshold", "rho must be positive");
    if (q < 2) throw math_error("invalid-radix", "mahler radix must be at least 2");
    if (alpha.is_zero()) throw math_error("not-in-punctured-disk", "alpha must be nonzero");
    if (compare_abs(alpha, embedding, Rational(1)) != -1)
        throw math_error("not-in-unit-disk", "need |alpha| < 1");
    unsigned long e = 1;
    for (long ell = 1; ell <= 200; ++ell) {
        if (e > (1UL << 56) / static_cast<unsigned long>(q))
            throw precision_error("cannot-certify", "threshold comparison never resolved");
        e *= static_cast<unsigned long>(q);
        if (compare_abs_pow(alpha, e, embedding, r) == -1) return ell;
    }
    throw precision_error("cannot-certify", "threshold comparison never resolved");
}

} // namespace transcend
