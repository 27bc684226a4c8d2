#include "qfermat/ntheory/gaussian.hpp"

#include "qfermat/error.hpp"
#include "qfermat/ntheory/factor.hpp"

#include <sstream>

namespace qfermat {

GaussianInteger GaussianInteger::pow(unsigned long exp) const {
    GaussianInteger result(1);
    GaussianInteger base = *this;
    while (exp) {
        if (exp & 1ul) result = result * base;
        exp >>= 1;
        if (exp) base = base * base;
    }
    return result;
}

std::optional<GaussianInteger> GaussianInteger::divide_exact(const GaussianInteger& a, const GaussianInteger& b) {
    if (b.is_zero()) throw InvalidInput("Gaussian division by zero");
    const Integer n = b.norm();
    const GaussianInteger num = a * b.conj();
    if (!mpz_divisible_p(num.re_.get_mpz_t(), n.get_mpz_t()) || !mpz_divisible_p(num.im_.get_mpz_t(), n.get_mpz_t()))
        return std::nullopt;
    GaussianInteger q;
    mpz_divexact(q.re_.get_mpz_t(), num.re_.get_mpz_t(), n.get_mpz_t());
    mpz_divexact(q.im_.get_mpz_t(), num.im_.get_mpz_t(), n.get_mpz_t());
    return q;
}

bool GaussianInteger::is_associate(const GaussianInteger& other) const {
    GaussianInteger u(1);
    for (int k = 0; k < 4; ++k, u = u * i())
        if (u * *this == other) return true;
    return false;
}

std::string GaussianInteger::to_string() const {
    std::ostringstream os;
    if (im_ == 0) {
        os << re_.get_str();
    } else if (re_ == 0) {
        os << (im_ == 1 ? "" : im_ == -1 ? "-" : im_.get_str()) << 'i';
    } else {
        os << re_.get_str() << (im_ < 0 ? " - " : " + ");
        Integer m = abs(im_);
        if (m != 1) os << m.get_str();
        os << 'i';
    }
    return os.str();
}

bool is_gaussian_prime(const GaussianInteger& pi) {
    if (pi.is_zero()) return false;
    if (is_probable_prime(pi.norm())) return true;
    // Associates of rational primes p = 3 mod 4: exactly one coordinate is zero.
    const Integer& a = pi.re() == 0 ? pi.im() : pi.re();
    if (pi.re() != 0 && pi.im() != 0) return false;
    const Integer p = abs(a);
    return mod_u64(p, 4) == 3 && is_probable_prime(p);
}

unsigned gaussian_valuation(const GaussianInteger& z, const GaussianInteger& pi) {
    if (z.is_zero()) throw InfiniteValuation("valuation of zero is infinite");
    if (!is_gaussian_prime(pi)) throw InvalidInput(pi.to_string() + " is not a Gaussian prime");
    unsigned v = 0;
    GaussianInteger rest = z;
    while (auto q = GaussianInteger::divide_exact(rest, pi)) {
        rest = std::move(*q);
        ++v;
    }
    return v;
}

GaussianInteger gaussian_prime_above(const Integer& p) {
    if (p == 2) return {1, 1};
    if (!is_probable_prime(p) || mod_u64(p, 4) != 1)
        throw InvalidInput(p.get_str() + " does not split in Z[i]");
    // Square root of -1 from a quadratic non-residue, then Cornacchia.
    Integer c = 2, e = (p - 1) / 4, r;
    for (;; ++c) {
        mpz_powm(r.get_mpz_t(), c.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
        if ((r * r + 1) % p == 0) break;
    }
    Integer a = p, b = r;
    const Integer limit = isqrt(p);
    while (b > limit) {
        Integer t = a % b;
        a = b;
        b = t;
    }
    Integer other = isqrt(p - b * b);
    Integer big = b > other ? b : other;
    Integer small = b > other ? other : b;
    return {big, small};
}

}  // namespace qfermat
