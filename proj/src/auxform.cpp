#include "transcend/auxform.hpp"

#include <random>

#include "transcend/errors.hpp"
#include "transcend/linalg.hpp"
#include "transcend/monomial.hpp"
#include "transcend/parallel.hpp"

namespace transcend {

namespace {

long max_degree(const std::vector<Poly<FieldElement>>& ps) {
    long d = 0;
    for (const auto& p : ps) d = std::max(d, static_cast<long>(p.deg()));
    return d;
}

bool all_zero(const std::vector<Poly<FieldElement>>& ps) {
    for (const auto& p : ps)
        if (!p.is_zero()) return false;
    return true;
}

// Rebuild a coefficient vector (p polys of degree <= n) from a flat kernel
// vector, with coordinates scaled to integral, content-1, sign-normal form.
std::vector<Poly<FieldElement>> unflatten(const std::vector<FieldElement>& flat, size_t p,
                                          long n) {
    std::vector<FieldElement> scaled = primitive_scaled(flat);
    std::vector<Poly<FieldElement>> out;
    out.reserve(p);
    for (size_t i = 0; i < p; ++i) {
        std::vector<FieldElement> c(scaled.begin() + i * (n + 1),
                                    scaled.begin() + (i + 1) * (n + 1));
        out.emplace_back(std::move(c));
    }
    return out;
}

void check_dims(const AuxiliaryForm& form, const LinearSystemSpec& sys) {
    if (form.coeffs.size() != sys.size)
        throw math_error("dimension-mismatch", "form dimension differs from system size");
}

} // namespace

AuxiliaryForm build_auxiliary(const std::vector<TruncSeries>& g, long n, long vstar) {
    size_t p = g.size();
    if (p == 0 || n < 0 || vstar < 1)
        throw math_error("precondition-violation", "need p >= 1, n >= 0, vstar >= 1");
    if (static_cast<long>(p) * (n + 1) <= vstar)
        throw math_error("precondition-violation",
                         "p*(n+1) must exceed the target valuation");
    for (const TruncSeries& gi : g)
        if (gi.order() < static_cast<size_t>(vstar) + 1)
            throw math_error("precondition-violation",
                             "series order must be at least vstar + 1");

    // Coefficient equations: row l < vstar, column (i, j) -> [z^(l-j)] g_i.
    size_t cols = p * (n + 1);
    Matrix<FieldElement> M(vstar, std::vector<FieldElement>(cols, FieldElement(0)));
    for (long l = 0; l < vstar; ++l)
        for (size_t i = 0; i < p; ++i)
            for (long j = 0; j <= std::min<long>(n, l); ++j)
                M[l][i * (n + 1) + j] = g[i].coeff(l - j);
    std::vector<std::vector<FieldElement>> kernel = kernel_basis(M, cols);
    if (kernel.empty()) throw math_error("no-solution", "kernel unexpectedly trivial");

    // Candidates: kernel basis vectors and their pairwise sums/differences;
    // keep the one of smallest reported height (first wins ties).
    std::vector<std::vector<FieldElement>> cands = kernel;
    for (size_t a = 0; a < kernel.size(); ++a)
        for (size_t b = a + 1; b < kernel.size(); ++b) {
            std::vector<FieldElement> plus(cols), minus(cols);
            for (size_t k = 0; k < cols; ++k) {
                plus[k] = kernel[a][k] + kernel[b][k];
                minus[k] = kernel[a][k] - kernel[b][k];
            }
            cands.push_back(std::move(plus));
            cands.push_back(std::move(minus));
        }

    AuxiliaryForm best;
    Rational best_height;
    bool have = false;
    for (const auto& cand : cands) {
        std::vector<Poly<FieldElement>> ps = unflatten(cand, p, n);
        if (all_zero(ps)) continue;
        Rational h(0);
        for (const auto& poly : ps) {
            Rational ph = poly_height(poly, 64);
            if (cmp(ph, h) > 0) h = ph;
        }
        if (!have || cmp(h, best_height) < 0) {
            best.coeffs = std::move(ps);
            best_height = h;
            have = true;
        }
    }
    if (!have) throw math_error("no-solution", "kernel produced no nonzero candidate");
    best.z_degree = max_degree(best.coeffs);
    best.generation = 0;

    auto val = eval_form(best, g).valuation();
    if (val.has_value() && static_cast<long>(*val) < vstar)
        throw math_error("no-solution", "constructed form misses the target valuation");
    return best;
}

AuxiliaryForm theta_step(const AuxiliaryForm& form, const LinearSystemSpec& sys) {
    sys.validate();
    if (sys.kind != SystemKind::differential)
        throw math_error("kind-mismatch", "theta step applies to differential systems");
    check_dims(form, sys);
    AuxiliaryForm out;
    out.coeffs.resize(sys.size);
    for (size_t i = 0; i < sys.size; ++i) {
        Poly<FieldElement> b = sys.T * form.coeffs[i].derivative();
        for (size_t j = 0; j < sys.size; ++j) b = b + sys.N[j][i] * form.coeffs[j];
        out.coeffs[i] = std::move(b);
    }
    if (all_zero(out.coeffs))
        throw math_error("no-solution", "theta step annihilated the form");
    out.z_degree = max_degree(out.coeffs);
    out.generation = form.generation + 1;
    return out;
}

AuxiliaryForm mahler_step(const AuxiliaryForm& form, const LinearSystemSpec& sys) {
    sys.validate();
    if (sys.kind != SystemKind::mahler)
        throw math_error("kind-mismatch", "mahler step applies to mahler systems");
    check_dims(form, sys);
    std::vector<Poly<FieldElement>> sub(sys.size);
    for (size_t j = 0; j < sys.size; ++j) sub[j] = form.coeffs[j].compose_zpow(sys.q);
    std::vector<Poly<FieldElement>> contracted(sys.size);
    bool divisible = true;
    for (size_t i = 0; i < sys.size; ++i) {
        Poly<FieldElement> c(0);
        for (size_t j = 0; j < sys.size; ++j) c = c + sys.N[j][i] * sub[j];
        divisible = divisible && c.divisible_by(sys.T);
        contracted[i] = std::move(c);
    }
    AuxiliaryForm out;
    out.clearing_d = divisible ? 0 : 1;
    out.coeffs.resize(sys.size);
    for (size_t i = 0; i < sys.size; ++i)
        out.coeffs[i] = divisible ? contracted[i].exact_div(sys.T) : contracted[i];
    if (all_zero(out.coeffs))
        throw math_error("no-solution", "mahler step annihilated the form");
    out.z_degree = max_degree(out.coeffs);
    out.generation = form.generation + 1;
    return out;
}

TruncSeries eval_form(const AuxiliaryForm& form, const std::vector<TruncSeries>& g) {
    if (form.coeffs.size() != g.size())
        throw math_error("dimension-mismatch", "form dimension differs from series count");
    size_t order = g[0].order();
    for (const TruncSeries& s : g) order = std::min(order, s.order());
    TruncSeries acc(order);
    for (size_t i = 0; i < g.size(); ++i)
        acc = acc + g[i].truncated(order).mul_poly(form.coeffs[i]);
    return acc;
}

Rational form_height(const AuxiliaryForm& form, mpfr_prec_t prec) {
    Rational h(0);
    for (const auto& p : form.coeffs) {
        Rational ph = poly_height(p, prec);
        if (cmp(ph, h) > 0) h = ph;
    }
    return h;
}

MultiplicityReport check_multiplicity(const std::vector<FunctionSpec>& f, int t, long trials,
                                      long M, long N, unsigned long long seed,
                                      size_t order) {
    if (f.empty() || trials < 1 || M < 0 || N < 1 || t < 1)
        throw math_error("precondition-violation", "need functions, trials >= 1, N, t >= 1");
    int m = static_cast<int>(f.size());
    MonomialBasis basis(m, static_cast<int>(N));
    std::vector<TruncSeries> series;
    series.reserve(f.size());
    for (const FunctionSpec& fs : f) series.push_back(extend_series(fs, order));
    std::vector<TruncSeries> mono = all_monomials(basis, series);

    MultiplicityReport rep;
    rep.trials = trials;
    rep.M = M;
    rep.N = N;
    rep.t = t;
    rep.seed = seed;
    rep.order = order;
    Integer denom = int_pow(Integer(N), t) * M;
    if (sgn(denom) == 0) denom = 1;

    std::atomic<long> zero_draws{0};
    struct TrialResult {
        long val = -1;
        bool sentinel = false;
    };
    std::vector<TrialResult> results = parallel_map<TrialResult>(
        static_cast<size_t>(trials), [&](size_t idx) -> TrialResult {
            // Independent per-trial stream: results are schedule-invariant.
            std::mt19937_64 rng(seed ^ (0x9E3779B97F4A7C15ULL * (idx + 1)));
            for (int attempt = 0; attempt < 1000; ++attempt) {
                TruncSeries acc(order);
                bool nonzero_poly = false;
                for (size_t mu = 0; mu < basis.size(); ++mu) {
                    std::vector<FieldElement> zc(M + 1);
                    for (long j = 0; j <= M; ++j) {
                        long c = static_cast<long>(rng() % 19) - 9;
                        zc[j] = FieldElement(c);
                        nonzero_poly = nonzero_poly || c != 0;
                    }
                    acc = acc + mono[mu].mul_poly(Poly<FieldElement>{zc});
                }
                if (!nonzero_poly) {
                    zero_draws.fetch_add(1);
                    continue;
                }
                auto val = acc.valuation();
                if (!val.has_value()) return {-1, true};
                return {static_cast<long>(*val), false};
            }
            throw math_error("degenerate-sampling", "all sampled forms were zero");
        });

    for (long i = 0; i < trials; ++i) {
        if (results[i].sentinel)
            throw precision_error("truncation-too-small",
                                  "sampled form vanishes on the whole truncation at trial " +
                                      std::to_string(i));
        long v = results[i].val;
        rep.valuations.push_back(v);
        rep.histogram[v]++;
        rep.max_valuation = std::max(rep.max_valuation, v);
    }
    rep.zero_draws = zero_draws.load();
    rep.max_ratio = Rational(Integer(rep.max_valuation)) / Rational(denom);
    return rep;
}

} // namespace transcend
