#include "qfermat/ntheory/finite_field.hpp"

#include "qfermat/ntheory/factor.hpp"

#include <map>
#include <sstream>

namespace qfermat::ff {

PrimeField::PrimeField(std::uint64_t p) : p_(p) {
    if (p < 2 || p >= (1ull << 32) || !is_probable_prime(Integer(static_cast<unsigned long>(p))))
        throw InvalidInput("PrimeField needs a prime below 2^32, got " + std::to_string(p));
}

PrimeField::Element PrimeField::from_rational(const Rational& q) const {
    const Element den = from_int(q.get_den());
    if (den == 0)
        throw InvalidInput("denominator " + q.get_den().get_str() + " is not invertible mod " + std::to_string(p_));
    return mul(from_int(q.get_num()), inv(den));
}

PrimeField::Element PrimeField::pow(Element a, std::uint64_t e) const {
    Element r = 1;
    a %= p_;
    while (e) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

PrimeField::Element PrimeField::inv(Element a) const {
    if (a % p_ == 0) throw InvalidInput("inverse of zero in F_" + std::to_string(p_));
    return pow(a, p_ - 2);
}

namespace {

using Ring = PolyRing<PrimeField>;

bool poly_less(const FpPoly& a, const FpPoly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    return std::lexicographical_compare(a.c.rbegin(), a.c.rend(), b.c.rbegin(), b.c.rend());
}

/// Squarefree decomposition (Musser) of a monic polynomial; appends
/// (squarefree part, multiplicity).
void squarefree(const Ring& ring, const FpPoly& f, unsigned mult, std::vector<std::pair<FpPoly, unsigned>>& out) {
    const std::uint64_t p = ring.field().characteristic();
    FpPoly g = ring.gcd(f, ring.derivative(f));
    FpPoly w = ring.divmod(f, g).first;
    unsigned i = 1;
    while (w.degree() > 0) {
        FpPoly y = ring.gcd(w, g);
        FpPoly z = ring.divmod(w, y).first;
        if (z.degree() > 0) out.emplace_back(ring.monic(z), i * mult);
        ++i;
        w = y;
        g = ring.divmod(g, y).first;
    }
    if (g.degree() > 0) {
        // g(x) = h(x^p); in F_p every coefficient is its own p-th root.
        FpPoly h;
        for (std::size_t k = 0; k < g.c.size(); k += p) h.c.push_back(g.c[k]);
        squarefree(ring, ring.trim(h), mult * static_cast<unsigned>(p), out);
    }
}

/// Distinct-degree factorization of a squarefree monic polynomial.
std::vector<std::pair<FpPoly, int>> distinct_degree(const Ring& ring, FpPoly f) {
    std::vector<std::pair<FpPoly, int>> out;
    const Integer p = ring.field().order();
    FpPoly h = ring.x();
    for (int d = 1; 2 * d <= f.degree(); ++d) {
        h = ring.powmod(h, p, f);
        FpPoly g = ring.gcd(f, ring.sub(h, ring.x()));
        if (g.degree() > 0) {
            out.emplace_back(g, d);
            f = ring.divmod(f, g).first;
            h = ring.mod(h, f);
        }
    }
    if (f.degree() > 0) out.emplace_back(f, f.degree());
    return out;
}

}  // namespace

FpPoly reduce_mod_p(const IntPolynomial& a, const PrimeField& fp) {
    FpPoly r;
    for (const auto& c : a.coefficients()) r.c.push_back(fp.from_int(c));
    return Ring(fp).trim(std::move(r));
}

std::vector<FpFactor> factor_mod_p(const FpPoly& a, const PrimeField& fp) {
    const Ring ring(fp);
    FpPoly f = ring.trim(a);
    if (f.is_zero()) throw InvalidInput("factorization of the zero polynomial");
    f = ring.monic(f);
    std::map<std::vector<std::uint64_t>, unsigned> mults;
    std::vector<FpPoly> order;
    if (f.degree() >= 1) {
        std::vector<std::pair<FpPoly, unsigned>> parts;
        squarefree(ring, f, 1, parts);
        std::mt19937_64 rng(0xfac7ULL);
        for (const auto& [part, mult] : parts) {
            for (const auto& [block, d] : distinct_degree(ring, part)) {
                for (FpPoly& irr : ring.equal_degree_split(block, d, rng)) {
                    auto [it, fresh] = mults.emplace(irr.c, 0);
                    if (fresh) order.push_back(irr);
                    it->second += mult;
                }
            }
        }
    }
    std::sort(order.begin(), order.end(), poly_less);
    std::vector<FpFactor> out;
    for (auto& irr : order) out.push_back({irr, mults[irr.c]});
    return out;
}

bool is_irreducible_mod_p(const FpPoly& a, const PrimeField& fp) {
    if (a.degree() < 1) return false;
    auto fs = factor_mod_p(a, fp);
    return fs.size() == 1 && fs[0].multiplicity == 1;
}

FpPoly first_irreducible(unsigned m, const PrimeField& fp) {
    if (m == 0) throw InvalidInput("irreducible polynomial of degree 0");
    const std::uint64_t p = fp.characteristic();
    std::vector<std::uint64_t> low(m, 0);
    for (;;) {
        FpPoly cand;
        cand.c = low;
        cand.c.push_back(1);
        if (is_irreducible_mod_p(cand, fp)) return cand;
        // Odometer over the lower coefficients, constant term first.
        std::size_t k = 0;
        while (k < m && ++low[k] == p) low[k++] = 0;
        if (k == m) throw InvalidInput("no irreducible polynomial found");
    }
}

std::string to_string(const FpPoly& a, char var) {
    if (a.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = a.c.size(); k-- > 0;) {
        if (a.c[k] == 0) continue;
        if (!first) os << " + ";
        first = false;
        if (k == 0 || a.c[k] != 1) os << a.c[k];
        if (k > 0) {
            if (a.c[k] != 1) os << '*';
            os << var;
            if (k > 1) os << '^' << k;
        }
    }
    return os.str();
}

ExtensionField::ExtensionField(PrimeField base, FpPoly modulus)
    : base_(base), ring_(base), modulus_(ring_.monic(ring_.trim(std::move(modulus)))) {
    if (modulus_.degree() < 1) throw InvalidInput("extension modulus must have positive degree");
}

ExtensionField::Element ExtensionField::generator() const { return wrap(ring_.mod(ring_.x(), modulus_)); }

ExtensionField::Element ExtensionField::add(const Element& a, const Element& b) const {
    return wrap(ring_.add(unwrap(a), unwrap(b)));
}

ExtensionField::Element ExtensionField::sub(const Element& a, const Element& b) const {
    return wrap(ring_.sub(unwrap(a), unwrap(b)));
}

ExtensionField::Element ExtensionField::neg(const Element& a) const { return sub(zero(), a); }

ExtensionField::Element ExtensionField::mul(const Element& a, const Element& b) const {
    return wrap(ring_.mulmod(unwrap(a), unwrap(b), modulus_));
}

ExtensionField::Element ExtensionField::pow(const Element& a, Integer e) const {
    return wrap(ring_.powmod(unwrap(a), std::move(e), modulus_));
}

ExtensionField::Element ExtensionField::inv(const Element& a) const {
    if (a.empty()) throw InvalidInput("inverse of zero in extension field");
    // a^(q-2) in the multiplicative group of order q-1.
    return pow(a, order() - 2);
}

ExtensionField::Element ExtensionField::random(std::mt19937_64& rng) const {
    return wrap(ring_.random(modulus_.degree(), rng));
}

std::string ExtensionField::to_string(const Element& a) const { return ff::to_string(unwrap(a), 'z'); }

}  // namespace qfermat::ff
