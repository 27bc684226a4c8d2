#include "qfermat/ntheory/sturm.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace qfermat;

TEST_CASE("root counting") {
    const IntPolynomial p{-2, 0, 1};  // +-sqrt 2
    CHECK(count_real_roots_above(p, Rational(-10)) == 2);
    CHECK(count_real_roots_above(p, Rational(0)) == 1);
    CHECK(count_real_roots(p, Rational(1), Rational(3, 2)) == 1);
    CHECK(count_real_roots(IntPolynomial{1, 0, 1}, Rational(-100), Rational(100)) == 0);
    // (x - 1)^3 (x + 2): repeated roots counted once
    const IntPolynomial q = IntPolynomial{-1, 1}.pow(3) * IntPolynomial{2, 1};
    CHECK(count_real_roots_above(q, Rational(-3)) == 2);
    CHECK(count_real_roots(q, Rational(0), Rational(1)) == 1);
}

TEST_CASE("Hasse interval") {
    CHECK(real_roots_within_hasse_bound(IntPolynomial{-8, 0, 1}, 3));  // 2 sqrt 2 < 2 sqrt 3
    CHECK(real_roots_within_hasse_bound(IntPolynomial{-12, 0, 1}, 3));  // boundary
    CHECK_FALSE(real_roots_within_hasse_bound(IntPolynomial{-13, 0, 1}, 3));
    CHECK(real_roots_within_hasse_bound(IntPolynomial{4, 1}, 5));
    CHECK_FALSE(real_roots_within_hasse_bound(IntPolynomial{5, 1}, 5));
    CHECK(real_roots_within_hasse_bound(IntPolynomial{0, 1}, 7));
}

TEST_CASE("Hasse check agrees with products of known linear factors") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long> root(-9, 9);
    for (int k = 0; k < 300; ++k) {
        IntPolynomial p = IntPolynomial::constant(1);
        long worst = 0;
        const int deg = 1 + static_cast<int>(rng() % 5);
        for (int j = 0; j < deg; ++j) {
            const long r = root(rng);
            p = p * IntPolynomial{-r, 1};
            worst = std::max(worst, r * r);
        }
        for (long t : {3l, 7l, 11l, 19l}) CHECK(real_roots_within_hasse_bound(p, t) == (worst <= 4 * t));
    }
}
