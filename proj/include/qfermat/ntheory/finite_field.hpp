#pragma once

// Finite fields F_p and F_p[z]/(P), dense polynomials over them, and the
// factorization/root-finding routines needed to reduce Hecke eigenvalues
// modulo primes of their coefficient fields.

#include "qfermat/error.hpp"
#include "qfermat/ntheory/integer.hpp"
#include "qfermat/ntheory/polynomial.hpp"

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace qfermat::ff {

/// Z/pZ for a prime p < 2^32.
class PrimeField {
public:
    using Element = std::uint64_t;

    explicit PrimeField(std::uint64_t p);

    std::uint64_t characteristic() const { return p_; }
    unsigned extension_degree() const { return 1; }
    Integer order() const { return Integer(static_cast<unsigned long>(p_)); }

    Element zero() const { return 0; }
    Element one() const { return 1; }
    Element from_int(const Integer& n) const { return mod_u64(n, p_); }
    Element from_rational(const Rational& q) const;

    bool is_zero(Element a) const { return a == 0; }
    bool equal(Element a, Element b) const { return a == b; }
    Element add(Element a, Element b) const { return (a + b) % p_; }
    Element sub(Element a, Element b) const { return (a + p_ - b) % p_; }
    Element neg(Element a) const { return a == 0 ? 0 : p_ - a; }
    Element mul(Element a, Element b) const {
        return static_cast<Element>(static_cast<unsigned __int128>(a) * b % p_);
    }
    Element pow(Element a, std::uint64_t e) const;
    Element inv(Element a) const;
    Element random(std::mt19937_64& rng) const { return rng() % p_; }

    std::string to_string(Element a) const { return std::to_string(a); }

private:
    std::uint64_t p_;
};

/// Dense polynomial over a field F, coefficients lowest degree first,
/// trailing zeros trimmed.
template <class F>
struct Poly {
    std::vector<typename F::Element> c;

    int degree() const { return static_cast<int>(c.size()) - 1; }
    bool is_zero() const { return c.empty(); }
    const typename F::Element& lead() const { return c.back(); }
};

template <class F>
class PolyRing {
public:
    using E = typename F::Element;
    using P = Poly<F>;

    explicit PolyRing(F field) : f_(std::move(field)) {}
    const F& field() const { return f_; }

    P trim(P a) const {
        while (!a.c.empty() && f_.is_zero(a.c.back())) a.c.pop_back();
        return a;
    }
    P constant(E v) const { return trim(P{{v}}); }
    P x() const { return P{{f_.zero(), f_.one()}}; }
    /// x - r
    P linear(E r) const { return P{{f_.neg(r), f_.one()}}; }

    bool equal(const P& a, const P& b) const {
        if (a.c.size() != b.c.size()) return false;
        for (std::size_t i = 0; i < a.c.size(); ++i)
            if (!f_.equal(a.c[i], b.c[i])) return false;
        return true;
    }

    P add(const P& a, const P& b) const {
        P r;
        r.c.resize(std::max(a.c.size(), b.c.size()), f_.zero());
        for (std::size_t i = 0; i < a.c.size(); ++i) r.c[i] = a.c[i];
        for (std::size_t i = 0; i < b.c.size(); ++i) r.c[i] = f_.add(r.c[i], b.c[i]);
        return trim(std::move(r));
    }
    P sub(const P& a, const P& b) const {
        P r;
        r.c.resize(std::max(a.c.size(), b.c.size()), f_.zero());
        for (std::size_t i = 0; i < a.c.size(); ++i) r.c[i] = a.c[i];
        for (std::size_t i = 0; i < b.c.size(); ++i) r.c[i] = f_.sub(r.c[i], b.c[i]);
        return trim(std::move(r));
    }
    P mul(const P& a, const P& b) const {
        if (a.is_zero() || b.is_zero()) return {};
        P r;
        r.c.assign(a.c.size() + b.c.size() - 1, f_.zero());
        for (std::size_t i = 0; i < a.c.size(); ++i) {
            if (f_.is_zero(a.c[i])) continue;
            for (std::size_t j = 0; j < b.c.size(); ++j) r.c[i + j] = f_.add(r.c[i + j], f_.mul(a.c[i], b.c[j]));
        }
        return trim(std::move(r));
    }
    P scale(const P& a, const E& s) const {
        P r = a;
        for (auto& v : r.c) v = f_.mul(v, s);
        return trim(std::move(r));
    }

    /// Quotient and remainder; b must be nonzero.
    std::pair<P, P> divmod(const P& a, const P& b) const {
        if (b.is_zero()) throw InvalidInput("polynomial division by zero");
        P rem = a;
        if (a.degree() < b.degree()) return {P{}, rem};
        P quo;
        quo.c.assign(static_cast<std::size_t>(a.degree() - b.degree() + 1), f_.zero());
        const E inv_lead = f_.inv(b.lead());
        while (!rem.is_zero() && rem.degree() >= b.degree()) {
            const std::size_t shift = static_cast<std::size_t>(rem.degree() - b.degree());
            const E factor = f_.mul(rem.lead(), inv_lead);
            quo.c[shift] = factor;
            for (std::size_t j = 0; j < b.c.size(); ++j)
                rem.c[j + shift] = f_.sub(rem.c[j + shift], f_.mul(factor, b.c[j]));
            rem = trim(std::move(rem));
        }
        return {trim(std::move(quo)), rem};
    }
    P mod(const P& a, const P& b) const { return divmod(a, b).second; }

    P monic(const P& a) const {
        if (a.is_zero()) return a;
        return scale(a, f_.inv(a.lead()));
    }

    P gcd(P a, P b) const {
        while (!b.is_zero()) {
            P r = mod(a, b);
            a = std::move(b);
            b = std::move(r);
        }
        return monic(a);
    }

    P mulmod(const P& a, const P& b, const P& m) const { return mod(mul(a, b), m); }

    P powmod(P base, Integer exp, const P& m) const {
        P result = constant(f_.one());
        base = mod(base, m);
        while (exp > 0) {
            if (mpz_odd_p(exp.get_mpz_t())) result = mulmod(result, base, m);
            exp >>= 1;
            if (exp > 0) base = mulmod(base, base, m);
        }
        return mod(result, m);
    }

    P derivative(const P& a) const {
        if (a.c.size() <= 1) return {};
        P r;
        r.c.resize(a.c.size() - 1);
        for (std::size_t i = 1; i < a.c.size(); ++i)
            r.c[i - 1] = f_.mul(a.c[i], f_.from_int(Integer(static_cast<unsigned long>(i))));
        return trim(std::move(r));
    }

    E evaluate(const P& a, const E& x) const {
        E acc = f_.zero();
        for (auto it = a.c.rbegin(); it != a.c.rend(); ++it) acc = f_.add(f_.mul(acc, x), *it);
        return acc;
    }

    P random(int degree_below, std::mt19937_64& rng) const {
        P r;
        r.c.resize(static_cast<std::size_t>(std::max(degree_below, 0)));
        for (auto& v : r.c) v = f_.random(rng);
        return trim(std::move(r));
    }

    /// Splits a squarefree monic polynomial whose irreducible factors all
    /// have degree d into those factors (Cantor-Zassenhaus; trace map in
    /// characteristic 2).
    std::vector<P> equal_degree_split(const P& g, int d, std::mt19937_64& rng) const {
        if (g.degree() <= d) return {monic(g)};
        const Integer q = f_.order();
        for (;;) {
            P a = random(g.degree(), rng);
            if (a.degree() < 1) continue;
            P h;
            if (f_.characteristic() == 2) {
                // Absolute trace to F_2 over F_{q^d}.
                const unsigned long bits = static_cast<unsigned long>(f_.extension_degree()) * static_cast<unsigned long>(d);
                P t = mod(a, g);
                h = t;
                for (unsigned long i = 1; i < bits; ++i) {
                    t = mulmod(t, t, g);
                    h = add(h, t);
                }
            } else {
                Integer e = (ipow(q, static_cast<unsigned long>(d)) - 1) / 2;
                h = sub(powmod(a, e, g), constant(f_.one()));
            }
            P split = gcd(g, h);
            if (split.degree() > 0 && split.degree() < g.degree()) {
                auto left = equal_degree_split(split, d, rng);
                auto right = equal_degree_split(divmod(g, split).first, d, rng);
                left.insert(left.end(), right.begin(), right.end());
                return left;
            }
        }
    }

    /// Distinct roots of a in the field, sorted by the field's element order.
    std::vector<E> roots(const P& a) const {
        if (a.is_zero()) throw InvalidInput("roots of the zero polynomial");
        P g = monic(a);
        if (g.degree() < 1) return {};
        // gcd with x^q - x isolates the product of distinct linear factors.
        P xq = powmod(x(), f_.order(), g);
        P lin = gcd(g, sub(xq, x()));
        std::vector<E> out;
        if (lin.degree() < 1) return out;
        std::mt19937_64 rng(0x5eedULL);
        for (const P& factor : equal_degree_split(lin, 1, rng)) out.push_back(f_.neg(factor.c[0]));
        std::sort(out.begin(), out.end());
        return out;
    }

private:
    F f_;
};

using FpPoly = Poly<PrimeField>;

struct FpFactor {
    FpPoly factor;  // monic irreducible
    unsigned multiplicity;
};

/// Factorization of a nonzero polynomial over F_p into monic irreducibles,
/// sorted by (degree, coefficients). Deterministic.
std::vector<FpFactor> factor_mod_p(const FpPoly& a, const PrimeField& fp);

bool is_irreducible_mod_p(const FpPoly& a, const PrimeField& fp);

/// Lexicographically first monic irreducible polynomial of degree m over F_p.
FpPoly first_irreducible(unsigned m, const PrimeField& fp);

/// Reduction of an integer polynomial modulo p.
FpPoly reduce_mod_p(const IntPolynomial& a, const PrimeField& fp);

std::string to_string(const FpPoly& a, char var = 'y');

/// F_p[z]/(P) for a monic irreducible P over F_p.
class ExtensionField {
public:
    using Element = std::vector<std::uint64_t>;

    ExtensionField(PrimeField base, FpPoly modulus);

    const PrimeField& base() const { return base_; }
    const FpPoly& modulus() const { return modulus_; }
    std::uint64_t characteristic() const { return base_.characteristic(); }
    unsigned extension_degree() const { return static_cast<unsigned>(modulus_.degree()); }
    Integer order() const { return ipow(base_.order(), extension_degree()); }

    Element zero() const { return {}; }
    Element one() const { return {1}; }
    Element embed(std::uint64_t a) const { return base_.is_zero(a) ? Element{} : Element{a}; }
    Element from_int(const Integer& n) const { return embed(base_.from_int(n)); }
    /// The class of z.
    Element generator() const;

    bool is_zero(const Element& a) const { return a.empty(); }
    bool equal(const Element& a, const Element& b) const { return a == b; }
    Element add(const Element& a, const Element& b) const;
    Element sub(const Element& a, const Element& b) const;
    Element neg(const Element& a) const;
    Element mul(const Element& a, const Element& b) const;
    Element pow(const Element& a, Integer e) const;
    Element inv(const Element& a) const;
    Element random(std::mt19937_64& rng) const;

    std::string to_string(const Element& a) const;

private:
    Element wrap(FpPoly p) const { return std::move(p.c); }
    FpPoly unwrap(const Element& a) const { return FpPoly{a}; }

    PrimeField base_;
    PolyRing<PrimeField> ring_;
    FpPoly modulus_;
};

}  // namespace qfermat::ff
