#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "magnihom/rational.hpp"

namespace magnihom {

/// Dense matrix over arbitrary-precision integers, row-major.
struct IntMatrix {
    std::size_t rows = 0, cols = 0;
    std::vector<Int> a;

    IntMatrix() = default;
    IntMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c) {}

    Int& at(std::size_t r, std::size_t c) { return a[r * cols + c]; }
    const Int& at(std::size_t r, std::size_t c) const { return a[r * cols + c]; }

    static IntMatrix identity(std::size_t n) {
        IntMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    bool is_zero() const {
        for (const Int& x : a)
            if (x != 0) return false;
        return true;
    }

    IntMatrix multiply(const IntMatrix& other) const {
        if (cols != other.rows) throw std::invalid_argument("matrix shape mismatch");
        IntMatrix out(rows, other.cols);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t k = 0; k < cols; ++k) {
                const Int& x = at(i, k);
                if (x == 0) continue;
                for (std::size_t j = 0; j < other.cols; ++j) {
                    const Int& y = other.at(k, j);
                    if (y != 0) out.at(i, j) += x * y;
                }
            }
        return out;
    }

    std::vector<Int> apply(const std::vector<Int>& x) const {
        if (x.size() != cols) throw std::invalid_argument("vector size mismatch");
        std::vector<Int> out(rows);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j)
                if (at(i, j) != 0 && x[j] != 0) out[i] += at(i, j) * x[j];
        return out;
    }

    std::vector<Int> column(std::size_t j) const {
        std::vector<Int> out(rows);
        for (std::size_t i = 0; i < rows; ++i) out[i] = at(i, j);
        return out;
    }

    friend bool operator==(const IntMatrix& x, const IntMatrix& y) {
        return x.rows == y.rows && x.cols == y.cols && x.a == y.a;
    }
};

/// U * M * V = D with U, V unimodular and D diagonal, d_1 | d_2 | ...
struct SmithResult {
    IntMatrix u, d, v;
    std::size_t rank = 0;
    std::vector<Int> invariant_factors;  // the nonzero diagonal, all positive
};

namespace detail {

inline Int abs_int(const Int& x) { return x < 0 ? Int(-x) : x; }

inline void swap_rows(IntMatrix& m, std::size_t r0, std::size_t r1) {
    if (r0 == r1) return;
    for (std::size_t j = 0; j < m.cols; ++j) std::swap(m.at(r0, j), m.at(r1, j));
}

inline void swap_cols(IntMatrix& m, std::size_t c0, std::size_t c1) {
    if (c0 == c1) return;
    for (std::size_t i = 0; i < m.rows; ++i) std::swap(m.at(i, c0), m.at(i, c1));
}

// row r0 += q * row r1
inline void add_row(IntMatrix& m, std::size_t r0, const Int& q, std::size_t r1) {
    if (q == 0) return;
    for (std::size_t j = 0; j < m.cols; ++j) m.at(r0, j) += q * m.at(r1, j);
}

inline void add_col(IntMatrix& m, std::size_t c0, const Int& q, std::size_t c1) {
    if (q == 0) return;
    for (std::size_t i = 0; i < m.rows; ++i) m.at(i, c0) += q * m.at(i, c1);
}

inline void negate_row(IntMatrix& m, std::size_t r) {
    for (std::size_t j = 0; j < m.cols; ++j) m.at(r, j) = -m.at(r, j);
}

}  // namespace detail

/// Smith normal form by row/column reduction.  The pivot is always a
/// minimal-absolute-value nonzero entry of the working submatrix, which
/// keeps coefficient growth in check on the sparse boundary matrices this
/// library produces.
inline SmithResult smith_normal_form(const IntMatrix& m) {
    SmithResult res;
    res.d = m;
    res.u = IntMatrix::identity(m.rows);
    res.v = IntMatrix::identity(m.cols);
    IntMatrix& d = res.d;
    IntMatrix& u = res.u;
    IntMatrix& v = res.v;

    const std::size_t nmin = std::min(m.rows, m.cols);
    std::size_t t = 0;
    while (t < nmin) {
        // locate a minimal nonzero pivot in the submatrix [t.., t..]
        bool found = false;
        std::size_t pr = t, pc = t;
        for (std::size_t i = t; i < d.rows; ++i)
            for (std::size_t j = t; j < d.cols; ++j) {
                const Int& x = d.at(i, j);
                if (x == 0) continue;
                if (!found || detail::abs_int(x) < detail::abs_int(d.at(pr, pc))) {
                    found = true;
                    pr = i;
                    pc = j;
                }
            }
        if (!found) break;
        detail::swap_rows(d, t, pr);
        detail::swap_rows(u, t, pr);
        detail::swap_cols(d, t, pc);
        detail::swap_cols(v, t, pc);

        bool clean = false;
        while (!clean) {
            clean = true;
            for (std::size_t i = t + 1; i < d.rows; ++i) {
                if (d.at(i, t) == 0) continue;
                Int q = d.at(i, t) / d.at(t, t);  // truncated division
                detail::add_row(d, i, -q, t);
                detail::add_row(u, i, -q, t);
                if (d.at(i, t) != 0) {
                    // remainder is smaller than the pivot; promote it
                    detail::swap_rows(d, t, i);
                    detail::swap_rows(u, t, i);
                    clean = false;
                }
            }
            if (!clean) continue;
            for (std::size_t j = t + 1; j < d.cols; ++j) {
                if (d.at(t, j) == 0) continue;
                Int q = d.at(t, j) / d.at(t, t);
                detail::add_col(d, j, -q, t);
                detail::add_col(v, j, -q, t);
                if (d.at(t, j) != 0) {
                    detail::swap_cols(d, t, j);
                    detail::swap_cols(v, t, j);
                    clean = false;
                }
            }
        }

        // force the divisibility chain: the pivot must divide every entry
        // of the remaining submatrix
        bool divides_all = true;
        for (std::size_t i = t + 1; i < d.rows && divides_all; ++i)
            for (std::size_t j = t + 1; j < d.cols; ++j)
                if (d.at(i, j) % d.at(t, t) != 0) {
                    detail::add_row(d, t, 1, i);
                    detail::add_row(u, t, 1, i);
                    divides_all = false;
                    break;
                }
        if (!divides_all) continue;  // re-clear with the disturbed row

        if (d.at(t, t) < 0) {
            detail::negate_row(d, t);
            detail::negate_row(u, t);
        }
        ++t;
    }

    res.rank = t;
    for (std::size_t i = 0; i < t; ++i) res.invariant_factors.push_back(d.at(i, i));
    return res;
}

inline std::size_t matrix_rank(const IntMatrix& m) {
    if (m.rows == 0 || m.cols == 0) return 0;
    return smith_normal_form(m).rank;
}

/// Basis of the integer kernel lattice of m, as matrix columns.  The basis
/// spans the full kernel: any integer vector killed by m is an integer
/// combination of the columns.
inline IntMatrix kernel_basis(const IntMatrix& m) {
    if (m.cols == 0) return IntMatrix(0, 0);
    if (m.rows == 0) return IntMatrix::identity(m.cols);
    SmithResult s = smith_normal_form(m);
    const std::size_t k = m.cols - s.rank;
    IntMatrix out(m.cols, k);
    for (std::size_t j = 0; j < k; ++j)
        for (std::size_t i = 0; i < m.cols; ++i) out.at(i, j) = s.v.at(i, s.rank + j);
    return out;
}

/// Solves basis * c = x over the integers; nullopt if x is outside the
/// lattice spanned by the columns.
inline std::optional<std::vector<Int>> lattice_solve(const SmithResult& s,
                                                     const std::vector<Int>& x) {
    // basis = u^{-1} d v^{-1}, so basis c = x  <=>  d (v^{-1} c) = u x
    std::vector<Int> y = s.u.apply(x);
    std::vector<Int> w(s.d.cols);
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (i < s.rank) {
            if (y[i] % s.d.at(i, i) != 0) return std::nullopt;
            w[i] = y[i] / s.d.at(i, i);
        } else if (y[i] != 0) {
            return std::nullopt;
        }
    }
    return s.v.apply(w);
}

inline std::optional<std::vector<Int>> lattice_solve(const IntMatrix& basis,
                                                     const std::vector<Int>& x) {
    return lattice_solve(smith_normal_form(basis), x);
}

/// Bareiss fraction-free determinant (square matrices only); used by the
/// property tests to confirm that SNF transforms are unimodular.
inline Int determinant(const IntMatrix& m) {
    if (m.rows != m.cols) throw std::invalid_argument("determinant: not square");
    const std::size_t n = m.rows;
    if (n == 0) return 1;
    IntMatrix w = m;
    Int sign = 1, prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (w.at(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && w.at(p, k) == 0) ++p;
            if (p == n) return 0;
            detail::swap_rows(w, k, p);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                w.at(i, j) = (w.at(i, j) * w.at(k, k) - w.at(i, k) * w.at(k, j)) / prev;
        prev = w.at(k, k);
    }
    return sign * w.at(n - 1, n - 1);
}

}  // namespace magnihom
