#pragma once

#include "qfermat/newform_store.hpp"
#include "qfermat/ntheory/factor.hpp"
#include "qfermat/ntheory/prime_set.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace qfermat {

/// The values c allowed in a_t = c*sqrt(2) at a prime t = 3 mod 4, from
/// |a_t| <= 2 sqrt(t): all c with c^2 <= 2t, i.e. |c| <= floor(sqrt(2t)).
struct TraceCandidates {
    std::uint64_t t = 0;
    std::vector<std::int64_t> scalars;  // ascending, symmetric about 0
};

TraceCandidates allowed_trace_scalars(std::uint64_t t);

/// Minimal polynomial of c*sqrt(2): x for c = 0, x^2 - 2c^2 otherwise.
IntPolynomial trace_polynomial(std::int64_t c);

struct ResultantAuditEntry {
    std::uint64_t t = 0;
    std::int64_t c = 0;  // c >= 0; -c gives the same polynomial
    Integer resultant;
    /// Empty when the resultant is zero.
    PrimeDivisors divisors;
};

struct TraceSurvivors {
    PrimeSet survivors;
    std::vector<ResultantAuditEntry> audit;
};

/// Primes p for which a_t = c sqrt(2) = b_t (mod P) is solvable for some
/// allowed c, P | p: t itself together with the prime divisors of
/// Res(trace_polynomial(c), charpoly(b_t)) over c. ALL when some resultant
/// vanishes. Requires t = 3 mod 4 and t coprime to 2 * level.
TraceSurvivors survivors_at_detailed(const NewformRecord& form, std::uint64_t t,
                                     const FactorOptions& factor_opts = {});
PrimeSet survivors_at(const NewformRecord& form, std::uint64_t t);

struct EliminationReport {
    std::string label;
    std::int64_t level = 0;
    int dimension = 0;
    std::map<std::uint64_t, PrimeSet> per_t;
    /// Intersection over t, restricted to p >= p_min.
    PrimeSet survivors;
    /// Members of the intersection below p_min, outside the method's
    /// irreducibility hypothesis.
    PrimeSet below_p_min;
    std::vector<ResultantAuditEntry> audit;
};

inline constexpr std::uint64_t kDefaultPMin = 14;
inline const std::vector<std::uint64_t> kDefaultTset{3, 7, 11, 19};

EliminationReport sieve_form(const NewformRecord& form, const std::vector<std::uint64_t>& tset,
                             std::uint64_t p_min = kDefaultPMin);

struct GlobalSurvivor {
    std::string label;
    /// Finite survivor sets are listed prime by prime; an infinite set
    /// (ALL or an open tail) is listed once with its whole PrimeSet.
    PrimeSet primes;
};

struct SieveOutcome {
    Integer q;
    std::vector<std::uint64_t> tset;
    std::uint64_t p_min = kDefaultPMin;
    std::vector<EliminationReport> reports;  // sorted by label
    std::vector<GlobalSurvivor> global_survivors;
    bool proved = false;

    /// (label, p) pairs of the finite survivors.
    std::vector<std::pair<std::string, Integer>> survivor_pairs() const;
};

/// Runs sieve_form on every form of level 32q. Throws MethodInapplicable
/// unless classify(q) is Interesting, InvalidInput for t not = 3 mod 4 or
/// dividing 2q.
SieveOutcome sieve_level(const Integer& q, const std::vector<std::uint64_t>& tset, const LevelData& level_data,
                         std::uint64_t p_min = kDefaultPMin);

/// Cited results the sieve's conclusion depends on.
std::vector<std::string> sieve_assumptions();

}  // namespace qfermat
