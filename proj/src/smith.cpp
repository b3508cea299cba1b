// SPDX-License-Identifier: MIT
#include "acalc/smith.hpp"

#include <algorithm>
#include <utility>

#include "acalc/errors.hpp"

namespace acalc {

mpz_class determinant(IntMatrix a) {
    // Bareiss fraction-free elimination.
    const std::size_t n = a.size();
    if (n == 0) return 1;
    mpz_class prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            std::size_t r = k + 1;
            while (r < n && a[r][k] == 0) ++r;
            if (r == n) return 0;
            std::swap(a[k], a[r]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                mpz_class v = a[i][j] * a[k][k] - a[i][k] * a[k][j];
                mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
                a[i][j] = std::move(v);
            }
        prev = a[k][k];
    }
    return sign * a[n - 1][n - 1];
}

std::vector<mpz_class> smith_invariants(IntMatrix a) {
    const std::size_t rows = a.size();
    const std::size_t cols = rows ? a[0].size() : 0;
    for (const auto& r : a)
        if (r.size() != cols) throw Error("smith_invariants: ragged matrix");
    std::vector<mpz_class> diag;
    for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
        // Pivot: smallest nonzero absolute value in the remaining block.
        for (;;) {
            std::size_t pi = rows, pj = cols;
            for (std::size_t i = t; i < rows; ++i)
                for (std::size_t j = t; j < cols; ++j)
                    if (a[i][j] != 0 && (pi == rows || abs(a[i][j]) < abs(a[pi][pj]))) {
                        pi = i;
                        pj = j;
                    }
            if (pi == rows) {
                for (std::size_t k = t; k < std::min(rows, cols); ++k) diag.emplace_back(0);
                goto done;
            }
            std::swap(a[t], a[pi]);
            for (auto& r : a) std::swap(r[t], r[pj]);
            bool clean = true;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (a[i][t] == 0) continue;
                const mpz_class f = a[i][t] / a[t][t];
                for (std::size_t j = t; j < cols; ++j) a[i][j] -= f * a[t][j];
                if (a[i][t] != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (a[t][j] == 0) continue;
                const mpz_class f = a[t][j] / a[t][t];
                for (std::size_t i = t; i < rows; ++i) a[i][j] -= f * a[i][t];
                if (a[t][j] != 0) clean = false;
            }
            if (!clean) continue;
            // Enforce divisibility of the rest of the block by the pivot.
            bool divides = true;
            for (std::size_t i = t + 1; i < rows && divides; ++i)
                for (std::size_t j = t + 1; j < cols; ++j)
                    if (a[i][j] % a[t][t] != 0) {
                        for (std::size_t k = t; k < cols; ++k) a[t][k] += a[i][k];
                        divides = false;
                        break;
                    }
            if (divides) break;
        }
        diag.push_back(abs(a[t][t]));
    }
done:
    return diag;
}

}  // namespace acalc
