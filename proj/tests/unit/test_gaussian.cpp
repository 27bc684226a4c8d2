#include "doctest.h"

#include "qfermat/error.hpp"
#include "qfermat/ntheory/gaussian.hpp"

#include <random>

using namespace qfermat;

TEST_CASE("gaussian_valuation examples") {
    CHECK(gaussian_valuation(73, {8, 3}) == 1);
    CHECK(gaussian_valuation(73, {8, -3}) == 1);
    CHECK(gaussian_valuation(2, {1, 1}) == 2);
    const GaussianInteger pi{8, 3};
    CHECK(gaussian_valuation(pi * pi * 5, pi) == 2);
    CHECK(gaussian_valuation(pi * pi * 5, pi.conj()) == 0);
    CHECK(gaussian_valuation(9, 3) == 2);
}

TEST_CASE("gaussian_valuation errors") {
    CHECK_THROWS_AS(gaussian_valuation(0, {1, 1}), InfiniteValuation);
    CHECK_THROWS_AS(gaussian_valuation(10, 5), InvalidInput);   // 5 = (2+i)(2-i)
    CHECK_THROWS_AS(gaussian_valuation(10, {3, 3}), InvalidInput);
    CHECK_THROWS_AS(gaussian_valuation(10, 1), InvalidInput);
}

TEST_CASE("primes above split rational primes") {
    CHECK(gaussian_prime_above(73) == GaussianInteger(8, 3));
    CHECK(gaussian_prime_above(97) == GaussianInteger(9, 4));
    CHECK(gaussian_prime_above(17) == GaussianInteger(4, 1));
    CHECK(gaussian_prime_above(2) == GaussianInteger(1, 1));
    CHECK_THROWS_AS(gaussian_prime_above(7), InvalidInput);
    for (long p : {5L, 13L, 29L, 89L, 113L, 10009L}) {
        auto pi = gaussian_prime_above(p);
        CHECK(pi.norm() == p);
    }
}

TEST_CASE("(1+i)^2 = 2i and associates") {
    GaussianInteger z{1, 1};
    CHECK(z * z == GaussianInteger(0, 2));
    CHECK(GaussianInteger(2).is_associate(z * z));
    CHECK(GaussianInteger(4, 1).to_string() == "4 + i");
    CHECK(GaussianInteger(-1, -4).to_string() == "-1 - 4i");
}

TEST_CASE("norm multiplicativity and valuation additivity on random inputs") {
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<long> coord(-700, 700);
    const std::vector<GaussianInteger> primes{{1, 1}, 3, 7, {2, 1}, {2, -1}, {3, 2}, {8, 3}, {9, 4}, {4, 1}};
    for (int iter = 0; iter < 500; ++iter) {
        GaussianInteger z{coord(rng), coord(rng)};
        GaussianInteger w{coord(rng), coord(rng)};
        if (z.is_zero() || w.is_zero()) continue;
        CHECK((z * w).norm() == z.norm() * w.norm());
        for (const auto& pi : primes)
            CHECK(gaussian_valuation(z * w, pi) == gaussian_valuation(z, pi) + gaussian_valuation(w, pi));
    }
}
