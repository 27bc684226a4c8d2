#pragma once

#include "qfermat/ntheory/integer.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qfermat {

/// Verdicts are checked in declaration order; the first that applies wins.
enum class Verdict {
    NotOneMod8,     ///< u^4 = -1 has no solution mod q: no primitive solutions at all
    BiquadrateSum,  ///< q = a^4 + b^4: the trivial solution (a, b, 1) exists for every p
    A4B2Form,       ///< q = (2A)^4 + B^2: a level-32q form with the same inner twist blocks the method
    Interesting,    ///< the sieve applies
};

std::string to_string(Verdict v);

struct Classification {
    Integer q;
    Verdict verdict = Verdict::Interesting;
    /// (a, b) for BiquadrateSum, (A, B) for A4B2Form.
    std::optional<std::pair<Integer, Integer>> witness;

    /// e.g. "BiquadrateSum(1,2)", "Interesting".
    std::string to_string() const;
};

/// u^4 = -1 (mod q) is solvable. Decided by q = 1 (mod 8); for q < 10^7 the
/// exhaustive search is run as well and a disagreement throws
/// InvariantViolation. Throws InvalidInput unless q is an odd prime.
bool has_local_solution(const Integer& q);

/// Exhaustive search over u in [1, q-1].
bool has_local_solution_by_search(std::uint64_t q);

/// (a, b) with 0 < a <= b and a^4 + b^4 = q.
std::optional<std::pair<Integer, Integer>> biquadrate_sum(const Integer& q);

/// (A, B) with A, B >= 1 and (2A)^4 + B^2 = q.
std::optional<std::pair<Integer, Integer>> even_fourth_plus_square(const Integer& q);

/// Throws InvalidInput for q < 2 or composite q.
Classification classify(const Integer& q);

/// Every odd prime divisor of a^4 + b^4 is 1 mod 8. Requires gcd(a, b) = 1
/// and a^4 + b^4 > 1.
bool check_divisor_residue(const Integer& a, const Integer& b);

struct Solution {
    Integer x, y, z;
    friend bool operator==(const Solution&, const Solution&) = default;
    friend auto operator<=>(const Solution& a, const Solution& b) {
        if (auto c = cmp(a.x, b.x); c != 0) return c <=> 0;
        if (auto c = cmp(a.y, b.y); c != 0) return c <=> 0;
        return cmp(a.z, b.z) <=> 0;
    }
};

/// All (x, y, z) with 0 < x, y <= bound, gcd(x, y) = 1, z >= 1 and
/// x^4 + y^4 = q z^p, sorted lexicographically.
std::vector<Solution> search_solutions(const Integer& q, unsigned long p, std::uint64_t bound);

}  // namespace qfermat
