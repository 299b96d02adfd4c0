#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "kcore/errors.hpp"
#include "kcore/rational.hpp"

namespace kcore {

// Dense row-major matrix of exact rationals. The systems handled here are
// tiny (at most a few dozen rows and about a dozen columns), so simplicity
// beats sparsity.
using Matrix = std::vector<std::vector<Rational>>;

namespace detail {

inline void require_rectangular(const Matrix& a) {
    if (a.empty()) return;
    const std::size_t cols = a.front().size();
    for (const auto& row : a) {
        if (row.size() != cols) throw internal_error("ragged matrix");
    }
}

// Multiplies each row by the lcm of its denominators, yielding an integer
// matrix with the same row space (and hence the same rank).
inline std::vector<std::vector<BigInt>> integer_rows(const Matrix& a) {
    std::vector<std::vector<BigInt>> out;
    out.reserve(a.size());
    for (const auto& row : a) {
        BigInt scale = 1;
        for (const auto& x : row) {
            scale = boost::multiprecision::lcm(scale, boost::multiprecision::denominator(x));
        }
        std::vector<BigInt> irow;
        irow.reserve(row.size());
        for (const auto& x : row) {
            irow.push_back(boost::multiprecision::numerator(x) *
                           (scale / boost::multiprecision::denominator(x)));
        }
        out.push_back(std::move(irow));
    }
    return out;
}

inline BigInt exact_div(const BigInt& num, const BigInt& den) {
    BigInt q, r;
    boost::multiprecision::divide_qr(num, den, q, r);
    if (r != 0) throw internal_error("fraction-free elimination produced a non-integer");
    return q;
}

}  // namespace detail

// Rank by fraction-free (Bareiss) elimination. Rows are cleared to integers
// first; every intermediate value is an exact integer minor, so there are no
// tolerances and no intermediate fraction growth.
inline int matrix_rank(const Matrix& a) {
    detail::require_rectangular(a);
    if (a.empty() || a.front().empty()) return 0;
    auto m = detail::integer_rows(a);
    const std::size_t rows = m.size();
    const std::size_t cols = m.front().size();

    BigInt prev = 1;
    std::size_t rank = 0;
    for (std::size_t step = 0; rank < rows && step < cols && rank < cols; ++step) {
        // Pivot search over the whole remaining block: column swaps are fine
        // because rank is invariant under them.
        std::size_t pr = rows, pc = cols;
        for (std::size_t j = step; j < cols && pr == rows; ++j) {
            for (std::size_t i = rank; i < rows; ++i) {
                if (m[i][j] != 0) {
                    pr = i;
                    pc = j;
                    break;
                }
            }
        }
        if (pr == rows) break;
        std::swap(m[rank], m[pr]);
        if (pc != step) {
            for (auto& row : m) std::swap(row[step], row[pc]);
        }
        for (std::size_t i = rank + 1; i < rows; ++i) {
            for (std::size_t j = step + 1; j < cols; ++j) {
                m[i][j] = detail::exact_div(m[rank][step] * m[i][j] - m[i][step] * m[rank][j], prev);
            }
            m[i][step] = 0;
        }
        prev = m[rank][step];
        ++rank;
    }
    return static_cast<int>(rank);
}

// Solves a square system A x = b exactly. Returns nullopt when A is singular.
inline std::optional<std::vector<Rational>> solve_unique(Matrix a, std::vector<Rational> rhs) {
    detail::require_rectangular(a);
    const std::size_t n = a.size();
    if (rhs.size() != n) throw internal_error("solve_unique: rhs size mismatch");
    if (n == 0) return std::vector<Rational>{};
    if (a.front().size() != n) throw internal_error("solve_unique: matrix not square");

    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = n;
        for (std::size_t i = col; i < n; ++i) {
            if (a[i][col] != 0) {
                pivot = i;
                break;
            }
        }
        if (pivot == n) return std::nullopt;
        std::swap(a[col], a[pivot]);
        std::swap(rhs[col], rhs[pivot]);
        const Rational inv = a[col][col];
        for (std::size_t j = col; j < n; ++j) a[col][j] /= inv;
        rhs[col] /= inv;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == col || a[i][col] == 0) continue;
            const Rational f = a[i][col];
            for (std::size_t j = col; j < n; ++j) a[i][j] -= f * a[col][j];
            rhs[i] -= f * rhs[col];
        }
    }
    return rhs;
}

// Basis of the null space {x : A x = 0}, one vector per free column of the
// reduced row echelon form. An empty result means the kernel is trivial.
inline Matrix kernel_basis(Matrix a) {
    detail::require_rectangular(a);
    if (a.empty() || a.front().empty()) return {};
    const std::size_t rows = a.size();
    const std::size_t cols = a.front().size();

    std::vector<std::size_t> pivot_col;
    std::size_t r = 0;
    for (std::size_t col = 0; col < cols && r < rows; ++col) {
        std::size_t pivot = rows;
        for (std::size_t i = r; i < rows; ++i) {
            if (a[i][col] != 0) {
                pivot = i;
                break;
            }
        }
        if (pivot == rows) continue;
        std::swap(a[r], a[pivot]);
        const Rational inv = a[r][col];
        for (std::size_t j = col; j < cols; ++j) a[r][j] /= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][col] == 0) continue;
            const Rational f = a[i][col];
            for (std::size_t j = col; j < cols; ++j) a[i][j] -= f * a[r][j];
        }
        pivot_col.push_back(col);
        ++r;
    }

    std::vector<bool> is_pivot(cols, false);
    for (auto c : pivot_col) is_pivot[c] = true;

    Matrix basis;
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        std::vector<Rational> x(cols, Rational(0));
        x[free] = 1;
        for (std::size_t i = 0; i < pivot_col.size(); ++i) {
            x[pivot_col[i]] = -a[i][free];
        }
        basis.push_back(std::move(x));
    }
    return basis;
}

}  // namespace kcore
