#pragma once

// Test-only reference computations, independent of the library paths they
// check.

#include "qfermat/ntheory/polynomial.hpp"

#include <random>
#include <vector>

namespace qfermat::testing {

/// Determinant by fraction-free Bareiss elimination.
inline Integer bareiss_determinant(std::vector<std::vector<Integer>> m) {
    const std::size_t n = m.size();
    if (n == 0) return 1;
    Integer prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t swap_row = k + 1;
            while (swap_row < n && m[swap_row][k] == 0) ++swap_row;
            if (swap_row == n) return 0;
            std::swap(m[k], m[swap_row]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Integer v = m[i][j] * m[k][k] - m[i][k] * m[k][j];
                mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
                m[i][j] = v;
            }
        }
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

/// Resultant as the determinant of the Sylvester matrix.
inline Integer sylvester_resultant(const IntPolynomial& f, const IntPolynomial& g) {
    const int m = f.degree(), n = g.degree();
    const std::size_t size = static_cast<std::size_t>(m + n);
    std::vector<std::vector<Integer>> s(size, std::vector<Integer>(size));
    for (int r = 0; r < n; ++r)
        for (int k = 0; k <= m; ++k) s[r][r + m - k] = f.coeff(static_cast<std::size_t>(k));
    for (int r = 0; r < m; ++r)
        for (int k = 0; k <= n; ++k) s[n + r][r + n - k] = g.coeff(static_cast<std::size_t>(k));
    return bareiss_determinant(std::move(s));
}

inline IntPolynomial random_poly(std::mt19937_64& rng, int max_degree, long bound, bool allow_zero = false) {
    std::uniform_int_distribution<int> deg(0, max_degree);
    std::uniform_int_distribution<long> coef(-bound, bound);
    for (;;) {
        const int d = deg(rng);
        std::vector<Integer> c(static_cast<std::size_t>(d + 1));
        for (auto& v : c) v = coef(rng);
        IntPolynomial p(std::move(c));
        if (allow_zero || !p.is_zero()) return p;
    }
}

}  // namespace qfermat::testing
