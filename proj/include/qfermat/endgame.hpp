#pragma once

#include "qfermat/newform_store.hpp"
#include "qfermat/ntheory/gaussian.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace qfermat {

/// (k/12) N prod_{p | N} (1 + 1/p), the Sturm bound for weight k on
/// Gamma_0(N). Throws InvalidInput for N < 1, odd or small k, or a
/// non-integral value.
Integer sturm_bound(const Integer& N, long k);

/// One pair of primes above l tried by verify_congruence.
struct CongruenceAttempt {
    std::string prime_a;  // irreducible factor of form_a's field polynomial mod l
    std::string prime_b;
    bool holds = false;
    /// Smallest failing index under the best embedding tried.
    std::optional<std::size_t> first_failure;
    /// Set when the pair could not be tested at all.
    std::string note;
};

struct CongruenceCertificate {
    std::string form_a;
    std::string form_b;
    std::uint64_t ell = 0;
    std::int64_t lcm_level = 0;
    std::uint64_t bound = 0;
    /// n <= bound with gcd(n, lcm_level) = 1.
    std::vector<std::size_t> indices_checked;
    bool holds = false;
    /// The pair that made every index pass (empty unless holds).
    std::string prime_a;
    std::string prime_b;
    std::vector<CongruenceAttempt> attempts;
};

/// Tests a_n = b_n modulo some pair of primes above l for every n up to the
/// Sturm bound of lcm(levels) coprime to that lcm. Throws MissingCoefficient
/// when a form has too few coefficients.
CongruenceCertificate verify_congruence(const NewformRecord& a, const NewformRecord& b, std::uint64_t ell);

struct ZeroPatternResult {
    bool holds = false;
    /// The prime above l at which every b_t vanishes (empty unless holds).
    std::string prime;
    std::vector<std::uint64_t> primes_checked;
};

/// b_t = 0 modulo one fixed prime above l for every prime t = 3 mod 4,
/// t <= bound, t coprime to the level.
ZeroPatternResult zero_trace_pattern_detailed(const NewformRecord& form, std::uint64_t ell, std::uint64_t bound);
bool zero_trace_pattern(const NewformRecord& form, std::uint64_t ell, std::uint64_t bound);

struct ValuationResidue {
    GaussianInteger pi;      // the prime above q with a > b > 0
    GaussianInteger pi_bar;
    unsigned long v_pi = 0;  // valuations of the discriminant of E_(A,B)
    unsigned long v_pi_bar = 0;
    unsigned long r_pi = 0;  // residues mod p
    unsigned long r_pi_bar = 0;
};

/// Valuations of the discriminant of E_(A,B) at the two primes above q,
/// reduced mod p. Requires gcd(A, B) = 1, A even, q = 1 mod 8 prime dividing
/// A^4 + B^4, p prime, and v_q(A^4 + B^4) = 1 mod p (the shape forced by
/// A^4 + B^4 = q C^p); throws InvalidInput otherwise. Asserts both residues
/// lie in {1, 2}.
ValuationResidue valuation_residue(const Integer& A, const Integer& B, const Integer& q, unsigned long p);

struct ValuationSpotCheck {
    Integer A, B;
    ValuationResidue residue;
};

struct EndgameCertificate {
    Integer q;
    unsigned long p = 0;
    CongruenceCertificate congruence;
    ZeroPatternResult zero_pattern;
    std::string valuation_statement;
    std::vector<ValuationSpotCheck> spot_checks;
    std::vector<std::string> cited_theorems;

    /// Every machine-checked ingredient passed.
    bool verified() const;
};

/// The (q, p) survivor argument: congruence of the surviving form with the
/// CM form, vanishing of its traces at t = 3 mod 4 modulo a prime above p,
/// and the discriminant valuations at q on pairs (A, B) with |A|, |B| <= grid.
EndgameCertificate run_endgame(const Integer& q, unsigned long p, const NewformRecord& survivor,
                               const NewformRecord& cm_form, long grid = 60, std::size_t max_spot_checks = 12);

}  // namespace qfermat
