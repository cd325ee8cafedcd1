#ifndef TRANSCEND_LINALG_HPP
#define TRANSCEND_LINALG_HPP

#include <utility>
#include <vector>

#include "transcend/poly.hpp"

namespace transcend {

// Dense row-major matrices over exact coefficient types.
template <class F>
using Matrix = std::vector<std::vector<F>>;

namespace detail {

// Fraction-free (Bareiss) forward elimination: every intermediate entry is a
// quotient of minors, and the division by the previous pivot is exact in any
// integral domain.  Deterministic pivoting: first nonzero entry in row order.
// Returns the pivot (row, col) list; M is left in echelon form.
template <class F, class Div>
std::vector<std::pair<size_t, size_t>> bareiss_eliminate(Matrix<F>& M, size_t cols, Div div) {
    std::vector<std::pair<size_t, size_t>> pivots;
    size_t rows = M.size();
    F prev = F(1);
    size_t row = 0;
    for (size_t col = 0; col < cols && row < rows; ++col) {
        size_t pr = row;
        while (pr < rows && is_zero_val(M[pr][col])) ++pr;
        if (pr == rows) continue;
        std::swap(M[row], M[pr]);
        for (size_t i = row + 1; i < rows; ++i) {
            for (size_t j = col + 1; j < cols; ++j) {
                F t = M[row][col] * M[i][j] - M[i][col] * M[row][j];
                M[i][j] = div(t, prev);
            }
            M[i][col] = F(0);
        }
        prev = M[row][col];
        pivots.emplace_back(row, col);
        ++row;
    }
    return pivots;
}

template <class F>
auto field_div() {
    return [](const F& a, const F& b) { return a / b; };
}

} // namespace detail

template <class F>
size_t matrix_rank(Matrix<F> M) {
    if (M.empty()) return 0;
    size_t cols = M[0].size();
    return detail::bareiss_eliminate(M, cols, detail::field_div<F>()).size();
}

// Basis of the right kernel {x : M x = 0}; one vector per free column, in
// ascending free-column order (deterministic).
template <class F>
std::vector<std::vector<F>> kernel_basis(Matrix<F> M, size_t cols) {
    std::vector<std::vector<F>> out;
    if (M.empty()) {
        for (size_t j = 0; j < cols; ++j) {
            std::vector<F> x(cols, F(0));
            x[j] = F(1);
            out.push_back(std::move(x));
        }
        return out;
    }
    auto pivots = detail::bareiss_eliminate(M, cols, detail::field_div<F>());
    std::vector<long> pivot_of_col(cols, -1);
    for (auto [r, c] : pivots) pivot_of_col[c] = static_cast<long>(r);
    for (size_t fc = 0; fc < cols; ++fc) {
        if (pivot_of_col[fc] >= 0) continue;
        std::vector<F> x(cols, F(0));
        x[fc] = F(1);
        for (size_t k = pivots.size(); k-- > 0;) {
            auto [pr, pc] = pivots[k];
            if (pc >= fc) continue;
            F s = F(0);
            for (size_t j = pc + 1; j <= fc; ++j) {
                if (is_zero_val(x[j]) || is_zero_val(M[pr][j])) continue;
                s = s + M[pr][j] * x[j];
            }
            x[pc] = F(0) - s / M[pr][pc];
        }
        out.push_back(std::move(x));
    }
    return out;
}

// Determinant over an integral domain with exact division (e.g. polynomials).
inline Poly<FieldElement> poly_matrix_det(Matrix<Poly<FieldElement>> M) {
    if (M.empty()) return Poly<FieldElement>(1);
    size_t n = M.size();
    auto div = [](const Poly<FieldElement>& a, const Poly<FieldElement>& b) {
        return a.exact_div(b);
    };
    // track row swaps for the sign
    std::vector<std::pair<size_t, size_t>> pivots;
    Poly<FieldElement> prev(1);
    size_t row = 0;
    int sign = 1;
    for (size_t col = 0; col < n && row < n; ++col) {
        size_t pr = row;
        while (pr < n && M[pr][col].is_zero()) ++pr;
        if (pr == n) return Poly<FieldElement>();
        if (pr != row) { std::swap(M[row], M[pr]); sign = -sign; }
        for (size_t i = row + 1; i < n; ++i) {
            for (size_t j = col + 1; j < n; ++j) {
                Poly<FieldElement> t = M[row][col] * M[i][j] - M[i][col] * M[row][j];
                M[i][j] = div(t, prev);
            }
            M[i][col] = Poly<FieldElement>();
        }
        prev = M[row][col];
        ++row;
    }
    Poly<FieldElement> d = M[n - 1][n - 1];
    return sign < 0 ? -d : d;
}

// Exact inverse of a square matrix over a field; throws "singular-matrix".
template <class F>
Matrix<F> matrix_inverse(Matrix<F> M) {
    size_t n = M.size();
    Matrix<F> inv(n, std::vector<F>(n, F(0)));
    for (size_t i = 0; i < n; ++i) inv[i][i] = F(1);
    for (size_t col = 0; col < n; ++col) {
        size_t pr = col;
        while (pr < n && is_zero_val(M[pr][col])) ++pr;
        if (pr == n) throw math_error("singular-matrix", "matrix is not invertible");
        std::swap(M[col], M[pr]);
        std::swap(inv[col], inv[pr]);
        F d = M[col][col];
        for (size_t j = 0; j < n; ++j) {
            M[col][j] = M[col][j] / d;
            inv[col][j] = inv[col][j] / d;
        }
        for (size_t i = 0; i < n; ++i) {
            if (i == col || is_zero_val(M[i][col])) continue;
            F f = M[i][col];
            for (size_t j = 0; j < n; ++j) {
                M[i][j] = M[i][j] - f * M[col][j];
                inv[i][j] = inv[i][j] - f * inv[col][j];
            }
        }
    }
    return inv;
}

template <class F>
std::vector<F> matrix_apply(const Matrix<F>& M, const std::vector<F>& v) {
    std::vector<F> out(M.size(), F(0));
    for (size_t i = 0; i < M.size(); ++i)
        for (size_t j = 0; j < v.size(); ++j) out[i] = out[i] + M[i][j] * v[j];
    return out;
}

template <class F>
Matrix<F> matrix_mul(const Matrix<F>& A, const Matrix<F>& B) {
    size_t n = A.size(), k = B.size(), m = k ? B[0].size() : 0;
    Matrix<F> out(n, std::vector<F>(m, F(0)));
    for (size_t i = 0; i < n; ++i)
        for (size_t t = 0; t < k; ++t)
            for (size_t j = 0; j < m; ++j) out[i][j] = out[i][j] + A[i][t] * B[t][j];
    return out;
}

} // namespace transcend

#endif
