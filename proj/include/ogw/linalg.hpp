#pragma once

// Dense exact linear algebra over the rationals: reduced row echelon form,
// particular solutions of linear systems, kernel bases and ranks.  Sizes in
// this engine are small (cochain models have a handful of basis elements;
// the structure-constant generator solves systems with at most a few
// hundred unknowns), so a straightforward Gauss-Jordan elimination is both
// exact and fast enough.

#include <cstddef>
#include <optional>
#include <vector>

#include "ogw/rational.hpp"

namespace ogw {

using Vec = std::vector<Rational>;
using Mat = std::vector<Vec>;  // row-major; all rows the same width

// In-place reduced row echelon form; returns the pivot column of each
// nonzero row, in order.
inline std::vector<std::size_t> rref(Mat& m) {
    std::vector<std::size_t> pivots;
    if (m.empty()) return pivots;
    std::size_t rows = m.size(), cols = m[0].size(), row = 0;
    for (std::size_t col = 0; col < cols && row < rows; ++col) {
        std::size_t sel = row;
        while (sel < rows && m[sel][col] == 0) ++sel;
        if (sel == rows) continue;
        std::swap(m[sel], m[row]);
        Rational inv = m[row][col];
        for (auto& x : m[row]) x /= inv;
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == row || m[r][col] == 0) continue;
            Rational f = m[r][col];
            for (std::size_t c = col; c < cols; ++c) m[r][c] -= f * m[row][c];
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

inline std::size_t rank(Mat m) { return rref(m).size(); }

// Solve A x = rhs (A given as rows).  Returns the canonical particular
// solution with every free variable set to zero, or nullopt when the system
// is inconsistent.
inline std::optional<Vec> solve_linear(const Mat& a, const Vec& rhs) {
    std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
    Mat aug(rows, Vec(cols + 1, Rational(0)));
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) aug[r][c] = a[r][c];
        aug[r][cols] = rhs[r];
    }
    std::vector<std::size_t> pivots = rref(aug);
    Vec x(cols, Rational(0));
    for (std::size_t i = 0; i < pivots.size(); ++i) {
        if (pivots[i] == cols) return std::nullopt;  // pivot in the rhs column
        x[pivots[i]] = aug[i][cols];
    }
    return x;
}

// Canonical basis of the null space of A (one vector per free column of the
// reduced form).
inline Mat kernel_basis(const Mat& a) {
    Mat m = a;
    std::size_t cols = m.empty() ? 0 : m[0].size();
    std::vector<std::size_t> pivots = rref(m);
    std::vector<bool> is_pivot(cols, false);
    for (std::size_t p : pivots) is_pivot[p] = true;
    Mat basis;
    for (std::size_t j = 0; j < cols; ++j) {
        if (is_pivot[j]) continue;
        Vec v(cols, Rational(0));
        v[j] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -m[i][j];
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace ogw
