#pragma once

#include "qfermat/ntheory/integer.hpp"

#include <initializer_list>
#include <optional>
#include <set>
#include <string>

namespace qfermat {

/// Either every rational prime (ALL) or a finite sorted set of primes.
///
/// Intersection and union are associative and commutative; ALL is the
/// identity for intersection and absorbing for union. A set may also carry
/// an open tail "every prime above B": it then contains its explicit primes
/// plus every prime greater than B. Tails arise when a cofactor could not be
/// factored (its divisors are unknown, so every prime above the trial bound
/// has to be kept) and when ALL is restricted to p >= lower.
class PrimeSet {
public:
    PrimeSet() = default;
    PrimeSet(std::initializer_list<long> primes);
    explicit PrimeSet(std::set<Integer> primes) : primes_(std::move(primes)) {}

    static PrimeSet all();
    /// Explicit primes plus every prime strictly greater than bound.
    static PrimeSet with_tail_above(std::set<Integer> primes, const Integer& bound);

    bool is_all() const { return all_; }
    bool empty() const { return !all_ && !tail_ && primes_.empty(); }
    bool is_finite() const { return !all_ && !tail_; }
    const std::set<Integer>& primes() const { return primes_; }
    const std::optional<Integer>& tail_bound() const { return tail_; }

    bool contains(const Integer& p) const;
    void insert(const Integer& p);

    PrimeSet intersect(const PrimeSet& other) const;
    PrimeSet unite(const PrimeSet& other) const;
    /// Keeps only primes >= lower. ALL becomes "every prime above lower - 1".
    PrimeSet at_least(const Integer& lower) const;
    /// Members strictly below `upper`, listed explicitly.
    std::set<Integer> members_below(const Integer& upper) const;
    /// Subset test; ALL is a subset only of ALL.
    bool subset_of(const PrimeSet& other) const;

    friend bool operator==(const PrimeSet& a, const PrimeSet& b);

    std::string to_string() const;

private:
    bool all_ = false;
    std::optional<Integer> tail_;
    std::set<Integer> primes_;
};

}  // namespace qfermat
