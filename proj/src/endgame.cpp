#include "qfermat/endgame.hpp"

#include "qfermat/error.hpp"
#include "qfermat/frey_curve.hpp"
#include "qfermat/ntheory/factor.hpp"
#include "qfermat/ntheory/finite_field.hpp"

#include <numeric>

namespace qfermat {

namespace {

using ff::ExtensionField;
using ff::FpPoly;
using ff::PrimeField;

std::uint64_t checked_prime(std::uint64_t ell) {
    if (ell < 2 || ell >= (1ull << 32) || !is_probable_prime(Integer(static_cast<unsigned long>(ell))))
        throw InvalidInput(std::to_string(ell) + " is not a prime below 2^32");
    return ell;
}

std::vector<FpPoly> distinct_factors(const IntPolynomial& h, const PrimeField& fp) {
    std::vector<FpPoly> out;
    for (const auto& f : ff::factor_mod_p(ff::reduce_mod_p(h, fp), fp)) out.push_back(f.factor);
    return out;
}

std::string describe(const FpPoly& g, std::uint64_t ell) { return ff::to_string(g) + " mod " + std::to_string(ell); }

/// Reduces Hecke eigenvalues through y -> alpha in K.
class Reducer {
public:
    Reducer(const ExtensionField& k, const NewformRecord& form, ExtensionField::Element alpha) : k_(k), form_(form) {
        powers_.push_back(k_.one());
        for (int i = 1; i < form.dimension; ++i) powers_.push_back(k_.mul(powers_.back(), alpha));
    }

    /// Throws InvalidInput when a coordinate denominator is divisible by l.
    ExtensionField::Element operator()(std::size_t n) const {
        const auto& coords = form_.coefficient(n).coords();
        ExtensionField::Element acc = k_.zero();
        for (std::size_t i = 0; i < coords.size(); ++i) {
            if (coords[i] == 0) continue;
            acc = k_.add(acc, k_.mul(k_.embed(k_.base().from_rational(coords[i])), powers_[i]));
        }
        return acc;
    }

private:
    const ExtensionField& k_;
    const NewformRecord& form_;
    std::vector<ExtensionField::Element> powers_;
};

std::vector<ExtensionField::Element> roots_in(const ExtensionField& k, const FpPoly& g) {
    ff::PolyRing<ExtensionField> ring(k);
    ff::Poly<ExtensionField> lifted;
    for (auto c : g.c) lifted.c.push_back(k.embed(c));
    return ring.roots(ring.trim(lifted));
}

void require_coefficients(const NewformRecord& f, std::size_t needed, const std::string& why) {
    if (f.num_an() < needed)
        throw MissingCoefficient(f.label + " has " + std::to_string(f.num_an()) + " coefficients but " + why + " needs " +
                                 std::to_string(needed) + " (short by " + std::to_string(needed - f.num_an()) + ")");
}

}  // namespace

Integer sturm_bound(const Integer& N, long k) {
    if (N < 1) throw InvalidInput("Sturm bound needs N >= 1");
    if (k < 2 || k % 2 != 0) throw InvalidInput("Sturm bound needs an even weight k >= 2");
    const auto pd = prime_divisors(N);
    if (pd.has_unknown()) throw InvalidInput("could not factor the level " + N.get_str());
    Integer num = Integer(k) * N, den = 12;
    for (const auto& p : pd.primes) {
        num *= p + 1;
        den *= p;
    }
    if (num % den != 0)
        throw InvalidInput("Sturm bound " + num.get_str() + "/" + den.get_str() + " is not an integer for N = " +
                           N.get_str() + ", k = " + std::to_string(k));
    return num / den;
}

CongruenceCertificate verify_congruence(const NewformRecord& a, const NewformRecord& b, std::uint64_t ell) {
    checked_prime(ell);
    CongruenceCertificate cert;
    cert.form_a = a.label;
    cert.form_b = b.label;
    cert.ell = ell;
    cert.lcm_level = std::lcm(a.level, b.level);
    cert.bound = sturm_bound(cert.lcm_level, 2).get_ui();
    const std::string why = "the congruence up to the Sturm bound " + std::to_string(cert.bound);
    require_coefficients(a, cert.bound, why);
    require_coefficients(b, cert.bound, why);
    for (std::size_t n = 1; n <= cert.bound; ++n)
        if (std::gcd(static_cast<std::int64_t>(n), cert.lcm_level) == 1) cert.indices_checked.push_back(n);

    const PrimeField fp(ell);
    for (const FpPoly& ga : distinct_factors(a.field_poly, fp)) {
        for (const FpPoly& gb : distinct_factors(b.field_poly, fp)) {
            CongruenceAttempt att;
            att.prime_a = describe(ga, ell);
            att.prime_b = describe(gb, ell);
            // A field containing both residue fields: F_l^m, m = lcm of the degrees.
            const auto m = static_cast<unsigned>(std::lcm(ga.degree(), gb.degree()));
            const FpPoly modulus = ga.degree() == static_cast<int>(m)   ? ga
                                   : gb.degree() == static_cast<int>(m) ? gb
                                                                        : ff::first_irreducible(m, fp);
            const ExtensionField k(fp, modulus);
            const auto alpha = ga.degree() == static_cast<int>(m) ? k.generator() : roots_in(k, ga).front();
            try {
                const Reducer ra(k, a, alpha);
                std::vector<ExtensionField::Element> lhs;
                lhs.reserve(cert.indices_checked.size());
                for (std::size_t n : cert.indices_checked) lhs.push_back(ra(n));
                for (const auto& beta : roots_in(k, gb)) {
                    const Reducer rb(k, b, beta);
                    std::optional<std::size_t> fail;
                    for (std::size_t i = 0; i < cert.indices_checked.size(); ++i)
                        if (!k.equal(lhs[i], rb(cert.indices_checked[i]))) {
                            fail = cert.indices_checked[i];
                            break;
                        }
                    if (!fail) {
                        att.holds = true;
                        att.first_failure.reset();
                        break;
                    }
                    if (!att.first_failure || *att.first_failure < *fail) att.first_failure = fail;
                }
            } catch (const InvalidInput& e) {
                att.note = e.what();
            }
            if (att.holds && !cert.holds) {
                cert.holds = true;
                cert.prime_a = att.prime_a;
                cert.prime_b = att.prime_b;
            }
            cert.attempts.push_back(std::move(att));
        }
    }
    return cert;
}

ZeroPatternResult zero_trace_pattern_detailed(const NewformRecord& form, std::uint64_t ell, std::uint64_t bound) {
    checked_prime(ell);
    ZeroPatternResult out;
    for (std::uint64_t t : primes_up_to(static_cast<std::uint32_t>(bound)))
        if (t % 4 == 3 && form.level % static_cast<std::int64_t>(t) != 0) out.primes_checked.push_back(t);
    if (!out.primes_checked.empty())
        require_coefficients(form, out.primes_checked.back(),
                             "the trace pattern up to " + std::to_string(bound));
    const PrimeField fp(ell);
    for (const FpPoly& g : distinct_factors(form.field_poly, fp)) {
        const ExtensionField k(fp, g);
        try {
            const Reducer r(k, form, k.generator());
            bool all_zero = true;
            for (std::uint64_t t : out.primes_checked)
                if (!k.is_zero(r(t))) {
                    all_zero = false;
                    break;
                }
            if (all_zero) {
                out.holds = true;
                out.prime = describe(g, ell);
                return out;
            }
        } catch (const InvalidInput&) {
            // l divides a denominator: this prime cannot be reached through the power basis
        }
    }
    return out;
}

bool zero_trace_pattern(const NewformRecord& form, std::uint64_t ell, std::uint64_t bound) {
    return zero_trace_pattern_detailed(form, ell, bound).holds;
}

ValuationResidue valuation_residue(const Integer& A, const Integer& B, const Integer& q, unsigned long p) {
    if (p < 3 || !is_probable_prime(Integer(p))) throw InvalidInput("p = " + std::to_string(p) + " must be an odd prime");
    if (q < 2 || !is_probable_prime(q) || mod_u64(q, 8) != 1)
        throw InvalidInput("q = " + q.get_str() + " must be a prime = 1 mod 8");
    const EllipticCurveOverQi curve = build_curve(A, B);
    Integer sum = A * A * A * A + B * B * B * B;
    if (sum % q != 0) throw InvalidInput("q = " + q.get_str() + " does not divide A^4 + B^4 = " + sum.get_str());
    const unsigned long e = mpz_remove(sum.get_mpz_t(), sum.get_mpz_t(), q.get_mpz_t());
    if (e % p != 1)
        throw InvalidInput("v_q(A^4 + B^4) = " + std::to_string(e) + " is not 1 mod " + std::to_string(p) +
                           ", so A^4 + B^4 is not of the form q C^p");
    ValuationResidue out;
    out.pi = gaussian_prime_above(q);
    out.pi_bar = out.pi.conj();
    const GaussianInteger delta = discriminant(curve);
    out.v_pi = gaussian_valuation(delta, out.pi);
    out.v_pi_bar = gaussian_valuation(delta, out.pi_bar);
    out.r_pi = out.v_pi % p;
    out.r_pi_bar = out.v_pi_bar % p;
    auto ok = [](unsigned long r) { return r == 1 || r == 2; };
    if (!ok(out.r_pi) || !ok(out.r_pi_bar) || out.r_pi == out.r_pi_bar)
        throw InvariantViolation("discriminant valuations at " + out.pi.to_string() + ", " + out.pi_bar.to_string() +
                                 " are " + std::to_string(out.v_pi) + ", " + std::to_string(out.v_pi_bar) +
                                 "; expected residues {1, 2} mod " + std::to_string(p));
    return out;
}

bool EndgameCertificate::verified() const {
    if (!congruence.holds || !zero_pattern.holds || spot_checks.empty()) return false;
    for (const auto& s : spot_checks)
        if (s.residue.r_pi == 0 || s.residue.r_pi_bar == 0) return false;
    return true;
}

EndgameCertificate run_endgame(const Integer& q, unsigned long p, const NewformRecord& survivor,
                               const NewformRecord& cm_form, long grid, std::size_t max_spot_checks) {
    if (!cm_form.cm_discriminant)
        throw InvalidInput(cm_form.label + " has no complex multiplication; the endgame needs the CM form");
    EndgameCertificate cert;
    cert.q = q;
    cert.p = p;
    cert.congruence = verify_congruence(survivor, cm_form, p);
    cert.zero_pattern = zero_trace_pattern_detailed(survivor, p, cert.congruence.bound);

    for (long A = 2; A <= grid && cert.spot_checks.size() < max_spot_checks; A += 2)
        for (long B = 1; B <= grid && cert.spot_checks.size() < max_spot_checks; B += 2) {
            if (std::gcd(A, B) != 1) continue;
            const Integer s = Integer(A) * A * A * A + Integer(B) * B * B * B;
            if (s % q != 0) continue;
            try {
                cert.spot_checks.push_back({A, B, valuation_residue(A, B, q, p)});
            } catch (const InvalidInput&) {
                // v_q(A^4 + B^4) not 1 mod p: not the shape of a solution
            }
        }

    const std::string qs = q.get_str(), ps = std::to_string(p);
    cert.valuation_statement =
        "For a primitive solution A^4 + B^4 = " + qs + " C^" + ps + " with A even, v_" + qs + "(A^4 + B^4) = 1 + " +
        ps + "k. Since iA^2 - B^2 = -conj(iA^2 + B^2) and the two factors are coprime away from 1 + i, the "
        "discriminant 64 (iA^2 - B^2)^2 (iA^2 + B^2) has valuations 1 + " + ps + "k and 2(1 + " + ps +
        "k) at the two primes above " + qs + ", neither divisible by " + ps + ". The curve is semistable there, so " +
        ps + " does not divide the number of components of the reduction and the mod " + ps +
        " representation is ramified at " + qs + ": its conductor is 32*" + qs + ", not 32.";
    cert.cited_theorems = {
        "The CM form " + cm_form.label + " has reducible Galois representations over Q(i); since " + ps +
            " = " + std::to_string(p % 4) + " mod 4, its mod " + ps +
            " image lies in the normalizer of a split Cartan subgroup.",
        "A mod " + ps + " congruence between the form of a solution and " + survivor.label +
            ", composed with the verified congruence to " + cm_form.label +
            ", puts the image of the solution's mod " + ps + " representation in the normalizer of a split Cartan "
            "subgroup; this contradicts Ellenberg's extension to Q-curves of Momose's results.",
        "Independently, the valuation argument shows the mod " + ps + " representation of the Q-curve has conductor "
            "32*" + qs + ", so it cannot arise from the level-32 form (Tate curve / Serre conductor).",
        "Sturm's bound: two weight-2 forms on Gamma_0(N) that agree mod a prime above " + ps +
            " at every index up to the bound are congruent at every index.",
    };
    return cert;
}

}  // namespace qfermat
