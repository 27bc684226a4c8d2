#pragma once

#include "qfermat/ntheory/integer.hpp"
#include "qfermat/ntheory/prime_set.hpp"

#include <cstdint>
#include <map>
#include <set>
#include <vector>

namespace qfermat {

/// Miller-Rabin. Deterministic below 3.3e24 (which covers every 64-bit
/// input); above that a fixed set of 24 prime bases is used, so the answer
/// is probabilistic but reproducible.
bool is_probable_prime(const Integer& n);

/// Primes up to `limit` by a sieve of Eratosthenes.
std::vector<std::uint32_t> primes_up_to(std::uint32_t limit);

struct FactorOptions {
    std::uint32_t trial_bound = 1'000'000;
    /// Iteration budget per Pollard-rho attempt and number of attempts.
    std::uint64_t rho_iterations = 1u << 20;
    unsigned rho_attempts = 8;
};

struct Factorization {
    std::map<Integer, unsigned> primes;
    /// 1 when factoring finished; otherwise a composite whose prime divisors
    /// are unknown (all of them exceed the trial bound).
    Integer cofactor = 1;

    bool complete() const { return cofactor == 1; }
};

/// Factors |n| (n != 0) by trial division, then Pollard-rho with Brent's
/// cycle detection on what remains.
Factorization factorize(const Integer& n, const FactorOptions& opts = {});

/// One nontrivial divisor of an odd composite n, or 0 if the budget ran out.
Integer pollard_brent(const Integer& n, std::uint64_t c, std::uint64_t max_iterations);

struct PrimeDivisors {
    std::set<Integer> primes;
    /// Unfactored composite (1 if none). Consumers must treat it as
    /// "unknown divisors": every prime above `trial_bound` may divide it.
    Integer unknown_cofactor = 1;
    Integer trial_bound = 0;

    bool has_unknown() const { return unknown_cofactor != 1; }
    /// Conservative PrimeSet view: explicit primes, plus the open tail above
    /// the trial bound when divisors are unknown.
    PrimeSet as_prime_set() const;
};

/// Distinct prime divisors of |n|. Throws InvalidInput for n = 0.
PrimeDivisors prime_divisors(const Integer& n, const FactorOptions& opts = {});

}  // namespace qfermat
