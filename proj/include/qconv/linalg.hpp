#pragma once

// Exact linear algebra over the rationals. Pivoting picks the first
// nonzero entry in column order: with exact arithmetic there is no
// stability concern, and the deterministic choice makes results canonical.

#include <qconv/rational.hpp>

#include <vector>

namespace qconv {

using Matrix = std::vector<std::vector<Rational>>;

struct SolveOutcome {
    enum Status { Unique, Underdetermined, Inconsistent };
    Status status = Unique;
    std::vector<Rational> solution;  // particular solution (free variables set to 0)
    std::vector<int> free_columns;
    int inconsistent_row = -1;  // original row index of the first failing equation
};

// Reduced-row-echelon solve of A x = rhs.
inline SolveOutcome solve(Matrix a, std::vector<Rational> rhs) {
    const size_t m = a.size();
    const size_t n = m ? a[0].size() : 0;
    if (rhs.size() != m) throw std::invalid_argument("solve: rhs size mismatch");
    std::vector<int> orig(m);
    for (size_t i = 0; i < m; ++i) orig[i] = static_cast<int>(i);

    std::vector<int> pivot_col_of_row;
    size_t piv = 0;
    for (size_t col = 0; col < n && piv < m; ++col) {
        size_t r = piv;
        while (r < m && a[r][col].is_zero()) ++r;
        if (r == m) continue;
        std::swap(a[piv], a[r]);
        std::swap(rhs[piv], rhs[r]);
        std::swap(orig[piv], orig[r]);
        Rational inv = Rational(1) / a[piv][col];
        for (size_t j = col; j < n; ++j) a[piv][j] *= inv;
        rhs[piv] *= inv;
        for (size_t i = 0; i < m; ++i) {
            if (i == piv || a[i][col].is_zero()) continue;
            Rational f = a[i][col];
            for (size_t j = col; j < n; ++j) a[i][j] -= f * a[piv][j];
            rhs[i] -= f * rhs[piv];
        }
        pivot_col_of_row.push_back(static_cast<int>(col));
        ++piv;
    }

    SolveOutcome out;
    for (size_t i = piv; i < m; ++i) {
        if (!rhs[i].is_zero()) {
            out.status = SolveOutcome::Inconsistent;
            out.inconsistent_row = orig[i];
            return out;
        }
    }
    out.solution.assign(n, Rational(0));
    for (size_t i = 0; i < pivot_col_of_row.size(); ++i)
        out.solution[static_cast<size_t>(pivot_col_of_row[i])] = rhs[i];
    std::vector<bool> is_pivot(n, false);
    for (int c : pivot_col_of_row) is_pivot[static_cast<size_t>(c)] = true;
    for (size_t c = 0; c < n; ++c)
        if (!is_pivot[c]) out.free_columns.push_back(static_cast<int>(c));
    out.status = out.free_columns.empty() ? SolveOutcome::Unique : SolveOutcome::Underdetermined;
    return out;
}

inline int rank(Matrix a) {
    const size_t m = a.size();
    const size_t n = m ? a[0].size() : 0;
    size_t piv = 0;
    for (size_t col = 0; col < n && piv < m; ++col) {
        size_t r = piv;
        while (r < m && a[r][col].is_zero()) ++r;
        if (r == m) continue;
        std::swap(a[piv], a[r]);
        Rational inv = Rational(1) / a[piv][col];
        for (size_t j = col; j < n; ++j) a[piv][j] *= inv;
        for (size_t i = piv + 1; i < m; ++i) {
            if (a[i][col].is_zero()) continue;
            Rational f = a[i][col];
            for (size_t j = col; j < n; ++j) a[i][j] -= f * a[piv][j];
        }
        ++piv;
    }
    return static_cast<int>(piv);
}

}  // namespace qconv
