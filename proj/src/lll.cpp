#include "transcend/lll.hpp"

#include "transcend/errors.hpp"

namespace transcend {

Integer round_nearest(const Rational& q) {
    Rational r = q + Rational(1) / Rational(2);
    Integer f;
    mpz_fdiv_q(f.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
    return f;
}

namespace {

Rational dot_qq(const std::vector<Rational>& a, const std::vector<Rational>& b) {
    Rational s(0);
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Rational dot_zq(const std::vector<Integer>& a, const std::vector<Rational>& b) {
    Rational s(0);
    for (size_t i = 0; i < a.size(); ++i) s += Rational(a[i]) * b[i];
    return s;
}

} // namespace

Matrix<Integer> lll_reduce(Matrix<Integer> B) {
    size_t n = B.size();
    if (n < 2) return B;
    size_t dim = B[0].size();

    std::vector<std::vector<Rational>> mu(n, std::vector<Rational>(n, Rational(0)));
    std::vector<Rational> norm2(n, Rational(0)); // squared norms of the GS vectors

    auto recompute = [&]() {
        std::vector<std::vector<Rational>> bstar(n, std::vector<Rational>(dim, Rational(0)));
        for (size_t i = 0; i < n; ++i) {
            for (size_t k = 0; k < dim; ++k) bstar[i][k] = Rational(B[i][k]);
            for (size_t j = 0; j < i; ++j) {
                if (norm2[j] == 0)
                    throw math_error("degenerate-lattice", "dependent rows in lattice basis");
                mu[i][j] = dot_zq(B[i], bstar[j]) / norm2[j];
                for (size_t k = 0; k < dim; ++k) bstar[i][k] -= mu[i][j] * bstar[j][k];
            }
            norm2[i] = dot_qq(bstar[i], bstar[i]);
        }
    };
    recompute();

    const Rational delta = Rational(3) / Rational(4);
    const Rational half = Rational(1) / Rational(2);
    size_t k = 1;
    long guard = 0;
    while (k < n) {
        if (++guard > 200000)
            throw math_error("lll-divergence", "reduction did not stabilize");
        // size reduction
        bool changed = false;
        for (size_t j = k; j-- > 0;) {
            if (cmp(abs(mu[k][j]), half) > 0) {
                Integer r = round_nearest(mu[k][j]);
                for (size_t c = 0; c < dim; ++c) B[k][c] -= r * B[j][c];
                changed = true;
            }
        }
        if (changed) recompute();
        Rational lhs = norm2[k];
        Rational rhs = (delta - mu[k][k - 1] * mu[k][k - 1]) * norm2[k - 1];
        if (cmp(lhs, rhs) >= 0) {
            ++k;
        } else {
            std::swap(B[k], B[k - 1]);
            recompute();
            k = k > 1 ? k - 1 : 1;
        }
    }
    return B;
}

} // namespace transcend
