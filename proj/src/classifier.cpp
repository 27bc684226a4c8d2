#include "qfermat/classifier.hpp"

#include "qfermat/error.hpp"
#include "qfermat/ntheory/factor.hpp"

#include <algorithm>
#include <numeric>

namespace qfermat {

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::NotOneMod8: return "NotOneMod8";
        case Verdict::BiquadrateSum: return "BiquadrateSum";
        case Verdict::A4B2Form: return "A4B2Form";
        case Verdict::Interesting: return "Interesting";
    }
    return "?";
}

std::string Classification::to_string() const {
    std::string out = qfermat::to_string(verdict);
    if (witness) out += "(" + witness->first.get_str() + "," + witness->second.get_str() + ")";
    return out;
}

bool has_local_solution_by_search(std::uint64_t q) {
    for (std::uint64_t u = 1; u < q; ++u) {
        const unsigned __int128 sq = static_cast<unsigned __int128>(u) * u % q;
        if ((sq * sq) % q == q - 1) return true;
    }
    return false;
}

bool has_local_solution(const Integer& q) {
    if (q < 3 || !is_probable_prime(q)) throw InvalidInput(q.get_str() + " is not an odd prime");
    const bool by_congruence = mod_u64(q, 8) == 1;
    if (q < 10'000'000) {
        const bool by_search = has_local_solution_by_search(q.get_ui());
        if (by_search != by_congruence)
            throw InvariantViolation("u^4 = -1 solvability disagrees with q = 1 mod 8 for q = " + q.get_str());
    }
    return by_congruence;
}

std::optional<std::pair<Integer, Integer>> biquadrate_sum(const Integer& q) {
    for (Integer a = 1; 2 * a * a * a * a <= q; ++a) {
        const Integer rest = q - a * a * a * a;
        Integer b;
        if (mpz_root(b.get_mpz_t(), rest.get_mpz_t(), 4) != 0) return std::make_pair(a, b);
    }
    return std::nullopt;
}

std::optional<std::pair<Integer, Integer>> even_fourth_plus_square(const Integer& q) {
    for (Integer a = 1;; ++a) {
        const Integer two_a = 2 * a;
        const Integer fourth = two_a * two_a * two_a * two_a;
        if (fourth >= q) break;
        const Integer rest = q - fourth;
        if (is_square(rest)) return std::make_pair(a, isqrt(rest));
    }
    return std::nullopt;
}

Classification classify(const Integer& q) {
    if (q < 2 || !is_probable_prime(q)) throw InvalidInput(q.get_str() + " is not prime");
    Classification c{q, Verdict::Interesting, std::nullopt};
    if (q == 2) {
        c.verdict = Verdict::BiquadrateSum;
        c.witness = std::make_pair(Integer(1), Integer(1));
        return c;
    }
    if (!has_local_solution(q)) {
        c.verdict = Verdict::NotOneMod8;
    } else if (auto w = biquadrate_sum(q)) {
        c.verdict = Verdict::BiquadrateSum;
        c.witness = w;
    } else if (auto w2 = even_fourth_plus_square(q)) {
        c.verdict = Verdict::A4B2Form;
        c.witness = w2;
    }
    return c;
}

bool check_divisor_residue(const Integer& a, const Integer& b) {
    if (igcd(a, b) != 1) throw InvalidInput("check_divisor_residue needs gcd(a, b) = 1");
    const Integer n = ipow(a, 4) + ipow(b, 4);
    if (n <= 1) throw InvalidInput("check_divisor_residue needs a^4 + b^4 > 1");
    const Factorization f = factorize(n);
    if (!f.complete()) throw Error("could not factor " + n.get_str());
    return std::all_of(f.primes.begin(), f.primes.end(),
                       [](const auto& pe) { return pe.first == 2 || mod_u64(pe.first, 8) == 1; });
}

std::vector<Solution> search_solutions(const Integer& q, unsigned long p, std::uint64_t bound) {
    std::vector<Solution> out;
    if (q == 0 || p == 0) return out;
    for (std::uint64_t x = 1; x <= bound; ++x) {
        const Integer x4 = ipow(Integer(static_cast<unsigned long>(x)), 4);
        for (std::uint64_t y = 1; y <= bound; ++y) {
            if (std::gcd(x, y) != 1) continue;
            const Integer n = x4 + ipow(Integer(static_cast<unsigned long>(y)), 4);
            if (!mpz_divisible_p(n.get_mpz_t(), q.get_mpz_t())) continue;
            const Integer m = n / q;
            Integer z;
            if (mpz_root(z.get_mpz_t(), m.get_mpz_t(), p) != 0 && z >= 1)
                out.push_back({Integer(static_cast<unsigned long>(x)), Integer(static_cast<unsigned long>(y)), z});
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace qfermat
