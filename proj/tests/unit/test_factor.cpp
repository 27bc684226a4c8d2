#include "doctest.h"

#include "qfermat/error.hpp"
#include "qfermat/ntheory/factor.hpp"

#include <random>

using namespace qfermat;

TEST_CASE("prime_divisors examples") {
    CHECK(prime_divisors(36).primes == std::set<Integer>{2, 3});
    CHECK(prime_divisors(2336).primes == std::set<Integer>{2, 73});
    CHECK(prime_divisors(1).primes.empty());
    CHECK(prime_divisors(-36).primes == std::set<Integer>{2, 3});
    CHECK_THROWS_AS(prime_divisors(0), InvalidInput);
}

TEST_CASE("primality") {
    int count = 0;
    for (long n = 0; n < 10000; ++n) {
        bool naive = n >= 2;
        for (long d = 2; d * d <= n && naive; ++d)
            if (n % d == 0) naive = false;
        CHECK(is_probable_prime(n) == naive);
        count += naive;
    }
    CHECK(count == 1229);
    // Strong pseudoprime to bases 2..37 product range and Carmichael numbers.
    CHECK_FALSE(is_probable_prime(Integer("3825123056546413051")));
    CHECK_FALSE(is_probable_prime(561));
    CHECK(is_probable_prime(Integer("18446744073709551557")));  // largest 64-bit prime
    CHECK(is_probable_prime(Integer("170141183460469231731687303715884105727")));  // 2^127 - 1
}

TEST_CASE("Pollard-Brent splits semiprimes beyond the trial bound") {
    const Integer p("1000000007"), q("998244353");
    auto f = factorize(p * q * 4);
    CHECK(f.complete());
    CHECK(f.primes.at(Integer(2)) == 2);
    CHECK(f.primes.at(p) == 1);
    CHECK(f.primes.at(q) == 1);

    const Integer big1("4294967311"), big2("4294967357");
    auto g = factorize(big1 * big1 * big2);
    CHECK(g.primes.at(big1) == 2);
    CHECK(g.primes.at(big2) == 1);
}

TEST_CASE("stalled factorization reports an unknown cofactor") {
    FactorOptions opts;
    opts.trial_bound = 100;
    opts.rho_iterations = 1;
    opts.rho_attempts = 1;
    const Integer p("1000000007"), q("1000000009");
    auto d = prime_divisors(p * q * 6, opts);
    CHECK(d.primes == std::set<Integer>{2, 3});
    CHECK(d.has_unknown());
    CHECK(d.unknown_cofactor == p * q);
    auto set = d.as_prime_set();
    CHECK(set.contains(2));
    CHECK(set.contains(p));
    CHECK(set.contains(Integer(101)));
    CHECK_FALSE(set.contains(5));
}

TEST_CASE("product of prime powers times cofactor equals |n|") {
    std::mt19937_64 rng(5);
    for (int iter = 0; iter < 200; ++iter) {
        Integer n = 1;
        const int terms = 1 + static_cast<int>(rng() % 5);
        for (int k = 0; k < terms; ++k) n *= Integer(static_cast<unsigned long>(rng() % 2000000000 + 1));
        if (rng() % 2) n = -n;
        auto f = factorize(n);
        Integer product = f.cofactor;
        for (const auto& [p, e] : f.primes) {
            CHECK(is_probable_prime(p));
            product *= ipow(p, e);
        }
        CHECK(product == abs(n));
        // Recompute multiplicities from the distinct divisors alone.
        auto d = prime_divisors(n);
        Integer rest = abs(n);
        for (const auto& p : d.primes)
            while (rest % p == 0) rest /= p;
        CHECK(rest == d.unknown_cofactor);
    }
}

TEST_CASE("PrimeSet algebra") {
    PrimeSet a{3, 7, 17};
    PrimeSet b{7, 17, 19};
    CHECK(a.intersect(b) == PrimeSet{7, 17});
    CHECK(a.unite(b) == PrimeSet{3, 7, 17, 19});
    CHECK(PrimeSet::all().intersect(a) == a);
    CHECK(a.intersect(PrimeSet::all()) == a);
    CHECK(a.unite(PrimeSet::all()).is_all());
    CHECK(a.at_least(14) == PrimeSet{17});
    CHECK(a.subset_of(PrimeSet::all()));
    CHECK_FALSE(PrimeSet::all().subset_of(a));

    auto tail = PrimeSet::with_tail_above({3}, 100);
    CHECK(tail.contains(101));
    CHECK(tail.contains(Integer("1000000007")));
    CHECK_FALSE(tail.contains(97));
    CHECK(tail.intersect(PrimeSet{3, 97, 101}) == PrimeSet{3, 101});
    CHECK(PrimeSet::all().at_least(14).members_below(30) == std::set<Integer>{17, 19, 23, 29});

    // Associativity / commutativity on a few sets including ALL and tails.
    std::vector<PrimeSet> sets{a, b, PrimeSet::all(), PrimeSet{}, tail, PrimeSet::with_tail_above({5}, 10)};
    for (const auto& x : sets)
        for (const auto& y : sets) {
            CHECK(x.intersect(y) == y.intersect(x));
            CHECK(x.unite(y) == y.unite(x));
            for (const auto& z : sets) {
                CHECK(x.intersect(y).intersect(z) == x.intersect(y.intersect(z)));
                CHECK(x.unite(y).unite(z) == x.unite(y.unite(z)));
            }
        }
}
