#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "hypic/rational.hpp"

namespace hypic {

using RVector = std::vector<Rational>;
using RMatrix = std::vector<RVector>;  // row-major, rows may be empty when cols == 0

namespace linalg {

struct Echelon {
    RMatrix rows;                    // reduced row echelon form, zero rows dropped
    std::vector<std::size_t> pivots; // pivot column of each row
};

/// Gauss-Jordan over Q. `cols` is needed when `m` has no rows.
inline Echelon rref(RMatrix m, std::size_t cols) {
    Echelon out;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
        std::size_t p = r;
        while (p < m.size() && m[p][c] == 0) ++p;
        if (p == m.size()) continue;
        std::swap(m[p], m[r]);
        Rational inv = 1 / m[r][c];
        for (std::size_t j = c; j < cols; ++j) m[r][j] *= inv;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == r || m[i][c] == 0) continue;
            Rational f = m[i][c];
            for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        out.pivots.push_back(c);
        ++r;
    }
    m.resize(r);
    out.rows = std::move(m);
    return out;
}

inline std::size_t rank(const RMatrix& m, std::size_t cols) { return rref(m, cols).pivots.size(); }

/// Basis of {x : m x = 0}.
inline RMatrix nullspace(const RMatrix& m, std::size_t cols) {
    Echelon e = rref(m, cols);
    std::vector<bool> is_pivot(cols, false);
    for (auto p : e.pivots) is_pivot[p] = true;
    RMatrix basis;
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        RVector v(cols, Rational(0));
        v[free] = 1;
        for (std::size_t i = 0; i < e.pivots.size(); ++i) v[e.pivots[i]] = -e.rows[i][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

/// One solution of m x = b, or nullopt when inconsistent.
inline std::optional<RVector> solve(const RMatrix& m, const RVector& b, std::size_t cols) {
    RMatrix aug;
    aug.reserve(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) {
        RVector row = m[i];
        row.push_back(b[i]);
        aug.push_back(std::move(row));
    }
    Echelon e = rref(std::move(aug), cols + 1);
    RVector x(cols, Rational(0));
    for (std::size_t i = 0; i < e.pivots.size(); ++i) {
        if (e.pivots[i] == cols) return std::nullopt;
        x[e.pivots[i]] = e.rows[i][cols];
    }
    return x;
}

/// Coordinates of v in the span of `basis` (vectors as rows), if it lies there.
inline std::optional<RVector> coordinates(const RMatrix& basis, const RVector& v) {
    const std::size_t n = v.size();
    RMatrix m(n, RVector(basis.size()));
    for (std::size_t j = 0; j < basis.size(); ++j)
        for (std::size_t i = 0; i < n; ++i) m[i][j] = basis[j][i];
    return solve(m, v, basis.size());
}

inline Rational determinant(RMatrix m) {
    const std::size_t n = m.size();
    Rational det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && m[p][c] == 0) ++p;
        if (p == n) return 0;
        if (p != c) {
            std::swap(m[p], m[c]);
            det = -det;
        }
        det *= m[c][c];
        for (std::size_t i = c + 1; i < n; ++i) {
            if (m[i][c] == 0) continue;
            Rational f = m[i][c] / m[c][c];
            for (std::size_t j = c; j < n; ++j) m[i][j] -= f * m[c][j];
        }
    }
    return det;
}

inline Rational dot(const RVector& a, const RVector& b) {
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

/// True when a and b are nonzero multiples of each other.
inline bool proportional(const RVector& a, const RVector& b) {
    if (a.size() != b.size()) return false;
    std::optional<Rational> ratio;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if ((a[i] == 0) != (b[i] == 0)) return false;
        if (a[i] == 0) continue;
        Rational r = a[i] / b[i];
        if (ratio && *ratio != r) return false;
        ratio = r;
    }
    return ratio.has_value();
}

}  // namespace linalg
}  // namespace hypic
