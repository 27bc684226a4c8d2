#include "qfermat/ntheory/factor.hpp"

#include "qfermat/error.hpp"

#include <array>
#include <mutex>

namespace qfermat {

namespace {

constexpr std::array<unsigned long, 24> kWitnesses = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37,
                                                      41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89};

bool miller_rabin_round(const Integer& n, const Integer& d, unsigned long s, unsigned long base) {
    Integer a(base);
    Integer x;
    mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    const Integer n1 = n - 1;
    if (x == 1 || x == n1) return true;
    for (unsigned long r = 1; r < s; ++r) {
        x = x * x % n;
        if (x == n1) return true;
        if (x == 1) return false;
    }
    return false;
}

const std::vector<std::uint32_t>& small_primes(std::uint32_t bound) {
    static std::mutex mu;
    static std::map<std::uint32_t, std::vector<std::uint32_t>> cache;
    std::lock_guard lock(mu);
    auto it = cache.find(bound);
    if (it == cache.end()) it = cache.emplace(bound, primes_up_to(bound)).first;
    return it->second;
}

void split_rest(const Integer& n, const FactorOptions& opts, Factorization& out) {
    if (n == 1) return;
    if (is_probable_prime(n)) {
        ++out.primes[n];
        return;
    }
    if (is_square(n)) {
        Integer r = isqrt(n);
        split_rest(r, opts, out);
        split_rest(r, opts, out);
        return;
    }
    for (unsigned attempt = 0; attempt < opts.rho_attempts; ++attempt) {
        Integer d = pollard_brent(n, 1 + attempt, opts.rho_iterations);
        if (d != 0 && d != n) {
            split_rest(d, opts, out);
            split_rest(n / d, opts, out);
            return;
        }
    }
    out.cofactor *= n;
}

}  // namespace

bool is_probable_prime(const Integer& n) {
    if (n < 2) return false;
    for (unsigned long p : kWitnesses) {
        if (n == p) return true;
        if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return false;
    }
    Integer d = n - 1;
    unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
    mpz_fdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);
    // The first 12 prime bases are a proof for n < 3.317e24.
    static const Integer deterministic_limit("3317044064679887385961981", 10);
    const std::size_t rounds = n < deterministic_limit ? 12 : kWitnesses.size();
    for (std::size_t i = 0; i < rounds; ++i)
        if (!miller_rabin_round(n, d, s, kWitnesses[i])) return false;
    return true;
}

std::vector<std::uint32_t> primes_up_to(std::uint32_t limit) {
    std::vector<std::uint32_t> out;
    if (limit < 2) return out;
    std::vector<bool> composite(static_cast<std::size_t>(limit) + 1, false);
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (composite[i]) continue;
        out.push_back(static_cast<std::uint32_t>(i));
        for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
    }
    return out;
}

Integer pollard_brent(const Integer& n, std::uint64_t c, std::uint64_t max_iterations) {
    if (mpz_even_p(n.get_mpz_t())) return 2;
    const Integer cc(static_cast<unsigned long>(c));
    Integer y = 2, x, ys, q = 1, g = 1;
    const std::uint64_t m = 128;
    std::uint64_t r = 1, iterations = 0;
    auto step = [&](Integer& v) {
        v = v * v + cc;
        mpz_mod(v.get_mpz_t(), v.get_mpz_t(), n.get_mpz_t());
    };
    while (g == 1) {
        x = y;
        for (std::uint64_t i = 0; i < r; ++i) step(y);
        std::uint64_t k = 0;
        while (k < r && g == 1) {
            ys = y;
            const std::uint64_t batch = std::min(m, r - k);
            for (std::uint64_t i = 0; i < batch; ++i) {
                step(y);
                q = q * abs(x - y) % n;
            }
            g = igcd(q, n);
            k += batch;
            iterations += batch;
            if (iterations > max_iterations) return 0;
        }
        r *= 2;
    }
    if (g == n) {
        // Batch overshot; backtrack one step at a time.
        do {
            step(ys);
            g = igcd(abs(x - ys), n);
        } while (g == 1);
    }
    return g == n ? Integer(0) : g;
}

Factorization factorize(const Integer& n, const FactorOptions& opts) {
    if (n == 0) throw InvalidInput("cannot factor zero");
    Factorization out;
    Integer rest = abs(n);
    for (std::uint32_t p : small_primes(opts.trial_bound)) {
        if (Integer(p) * p > rest) break;
        if (!mpz_divisible_ui_p(rest.get_mpz_t(), p)) continue;
        unsigned e = 0;
        do {
            mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
            ++e;
        } while (mpz_divisible_ui_p(rest.get_mpz_t(), p));
        out.primes[Integer(p)] = e;
    }
    split_rest(rest, opts, out);
    return out;
}

PrimeSet PrimeDivisors::as_prime_set() const {
    if (!has_unknown()) return PrimeSet(primes);
    return PrimeSet::with_tail_above(primes, trial_bound);
}

PrimeDivisors prime_divisors(const Integer& n, const FactorOptions& opts) {
    if (n == 0) throw InvalidInput("prime_divisors(0): every prime divides zero; handle the shared-root case first");
    Factorization f = factorize(n, opts);
    PrimeDivisors out;
    for (const auto& [p, e] : f.primes) out.primes.insert(p);
    out.unknown_cofactor = f.cofactor;
    out.trial_bound = opts.trial_bound;
    return out;
}

}  // namespace qfermat
