#include "torsionkit/intmat.hpp"

#include <algorithm>

namespace torsionkit {

BigInt int_det(IntMat m) {
    const std::size_t n = m.size();
    if (n == 0) return 1;
    for (const auto& row : m)
        if (row.size() != n) throw contract_error("int_det: not square");
    BigInt prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t p = k + 1;
            while (p < n && m[p][k] == 0) ++p;
            if (p == n) return 0;
            std::swap(m[k], m[p]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
        prev = m[k][k];
    }
    return sign > 0 ? m[n - 1][n - 1] : -m[n - 1][n - 1];
}

std::optional<IntVec> int_solve(const IntMat& m, const IntVec& b) {
    const std::size_t n = m.size();
    if (n == 0) return IntVec{};
    BigInt d = int_det(m);
    if (d == 0) return std::nullopt;
    IntVec x(n);
    for (std::size_t j = 0; j < n; ++j) {
        IntMat mj = m;
        for (std::size_t i = 0; i < n; ++i) mj[i][j] = b[i];
        BigInt dj = int_det(mj);
        if (dj % d != 0) return std::nullopt;
        x[j] = dj / d;
    }
    return x;
}

IntMat hermite_normal_form(IntMat rows) {
    if (rows.empty()) return rows;
    const std::size_t ncols = rows[0].size();
    std::size_t pivot_row = 0;
    for (std::size_t col = 0; col < ncols && pivot_row < rows.size(); ++col) {
        // use gcd-style row combinations to leave one nonzero entry in col
        while (true) {
            std::size_t best = rows.size();
            for (std::size_t i = pivot_row; i < rows.size(); ++i) {
                if (rows[i][col] == 0) continue;
                if (best == rows.size() || abs(rows[i][col]) < abs(rows[best][col])) best = i;
            }
            if (best == rows.size()) break;
            std::swap(rows[pivot_row], rows[best]);
            bool done = true;
            for (std::size_t i = pivot_row + 1; i < rows.size(); ++i) {
                if (rows[i][col] == 0) continue;
                BigInt q = rows[i][col] / rows[pivot_row][col];
                for (std::size_t j = 0; j < ncols; ++j)
                    rows[i][j] -= q * rows[pivot_row][j];
                if (rows[i][col] != 0) done = false;
            }
            if (done) break;
        }
        if (rows[pivot_row][col] == 0) continue;
        if (rows[pivot_row][col] < 0)
            for (std::size_t j = 0; j < ncols; ++j) rows[pivot_row][j] = -rows[pivot_row][j];
        // reduce entries above the pivot into [0, pivot)
        for (std::size_t i = 0; i < pivot_row; ++i) {
            BigInt q = rows[i][col] / rows[pivot_row][col];
            if (rows[i][col] % rows[pivot_row][col] < 0) q -= 1;
            if (q != 0)
                for (std::size_t j = 0; j < ncols; ++j)
                    rows[i][j] -= q * rows[pivot_row][j];
        }
        ++pivot_row;
    }
    rows.resize(pivot_row);
    return rows;
}

}  // namespace torsionkit
