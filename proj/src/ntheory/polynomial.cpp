#include "qfermat/ntheory/polynomial.hpp"

#include "qfermat/error.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>
#include <utility>

namespace qfermat {

IntPolynomial::IntPolynomial(std::vector<Integer> coeffs) : coeffs_(std::move(coeffs)) {
    normalize();
}

IntPolynomial::IntPolynomial(std::initializer_list<long> coeffs) {
    coeffs_.reserve(coeffs.size());
    for (long c : coeffs) coeffs_.emplace_back(c);
    normalize();
}

IntPolynomial IntPolynomial::constant(const Integer& c) { return IntPolynomial(std::vector<Integer>{c}); }

IntPolynomial IntPolynomial::monomial(const Integer& c, std::size_t degree) {
    std::vector<Integer> v(degree + 1);
    v[degree] = c;
    return IntPolynomial(std::move(v));
}

IntPolynomial IntPolynomial::linear_root(const Integer& root) {
    return IntPolynomial(std::vector<Integer>{-root, Integer(1)});
}

void IntPolynomial::normalize() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Integer IntPolynomial::coeff(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : Integer(0); }

const Integer& IntPolynomial::leading() const {
    if (coeffs_.empty()) throw InvalidInput("leading coefficient of the zero polynomial");
    return coeffs_.back();
}

Integer IntPolynomial::content() const {
    Integer g = 0;
    for (const auto& c : coeffs_) {
        g = igcd(g, c);
        if (g == 1) break;
    }
    return g;
}

IntPolynomial IntPolynomial::primitive_part() const {
    if (is_zero()) return {};
    Integer c = content();
    if (leading() < 0) c = -c;
    return divide_exact(c);
}

Integer IntPolynomial::evaluate(const Integer& x) const {
    Integer acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

Rational IntPolynomial::evaluate(const Rational& x) const {
    Rational acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + Rational(*it);
    return acc;
}

IntPolynomial IntPolynomial::derivative() const {
    if (coeffs_.size() <= 1) return {};
    std::vector<Integer> d(coeffs_.size() - 1);
    for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = coeffs_[k] * static_cast<unsigned long>(k);
    return IntPolynomial(std::move(d));
}

IntPolynomial IntPolynomial::pseudo_remainder(const IntPolynomial& a, const IntPolynomial& b) {
    if (b.is_zero()) throw InvalidInput("pseudo-remainder by the zero polynomial");
    if (a.degree() < b.degree()) return a;
    std::vector<Integer> r = a.coeffs_;
    const auto& bc = b.coeffs_;
    const Integer& lb = b.leading();
    const std::size_t db = bc.size() - 1;
    int e = a.degree() - b.degree() + 1;
    while (r.size() > db && !r.empty()) {
        const std::size_t dr = r.size() - 1;
        const Integer lr = r.back();
        const std::size_t shift = dr - db;
        for (auto& c : r) c *= lb;
        for (std::size_t k = 0; k < bc.size(); ++k) r[k + shift] -= lr * bc[k];
        --e;
        while (!r.empty() && r.back() == 0) r.pop_back();
    }
    // Scale so the multiplier is exactly lc(b)^(deg a - deg b + 1).
    if (e > 0) {
        Integer s = ipow(lb, static_cast<unsigned long>(e));
        for (auto& c : r) c *= s;
    }
    return IntPolynomial(std::move(r));
}

IntPolynomial IntPolynomial::divide_exact(const Integer& d) const {
    if (d == 0) throw InvalidInput("division of a polynomial by zero");
    std::vector<Integer> out(coeffs_.size());
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
        if (!mpz_divisible_p(coeffs_[k].get_mpz_t(), d.get_mpz_t()))
            throw InvalidInput("inexact polynomial division");
        mpz_divexact(out[k].get_mpz_t(), coeffs_[k].get_mpz_t(), d.get_mpz_t());
    }
    return IntPolynomial(std::move(out));
}

IntPolynomial IntPolynomial::exact_quotient(const IntPolynomial& a, const IntPolynomial& b) {
    if (b.is_zero()) throw InvalidInput("division by the zero polynomial");
    if (a.is_zero()) return {};
    if (a.degree() < b.degree()) throw InvalidInput("inexact polynomial division");
    std::vector<Integer> r = a.coeffs_;
    std::vector<Integer> q(static_cast<std::size_t>(a.degree() - b.degree() + 1));
    const auto& bc = b.coeffs_;
    for (std::size_t k = q.size(); k-- > 0;) {
        Integer& top = r[k + bc.size() - 1];
        if (!mpz_divisible_p(top.get_mpz_t(), b.leading().get_mpz_t()))
            throw InvalidInput("inexact polynomial division");
        mpz_divexact(q[k].get_mpz_t(), top.get_mpz_t(), b.leading().get_mpz_t());
        for (std::size_t j = 0; j < bc.size(); ++j) r[k + j] -= q[k] * bc[j];
    }
    for (const auto& c : r)
        if (c != 0) throw InvalidInput("inexact polynomial division");
    return IntPolynomial(std::move(q));
}

IntPolynomial IntPolynomial::operator-() const {
    std::vector<Integer> out(coeffs_.size());
    for (std::size_t k = 0; k < coeffs_.size(); ++k) out[k] = -coeffs_[k];
    return IntPolynomial(std::move(out));
}

IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b) {
    std::vector<Integer> out(std::max(a.coeffs_.size(), b.coeffs_.size()));
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = a.coeff(k) + b.coeff(k);
    return IntPolynomial(std::move(out));
}

IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b) { return a + (-b); }

IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Integer> out(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        if (a.coeffs_[i] == 0) continue;
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return IntPolynomial(std::move(out));
}

IntPolynomial operator*(const Integer& c, const IntPolynomial& a) {
    std::vector<Integer> out(a.coeffs_.size());
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = c * a.coeffs_[k];
    return IntPolynomial(std::move(out));
}

IntPolynomial IntPolynomial::pow(unsigned exp) const {
    IntPolynomial result = constant(1);
    IntPolynomial base = *this;
    while (exp) {
        if (exp & 1u) result = result * base;
        exp >>= 1;
        if (exp) base = base * base;
    }
    return result;
}

std::string IntPolynomial::to_string(char var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int k = degree(); k >= 0; --k) {
        const Integer& c = coeffs_[static_cast<std::size_t>(k)];
        if (c == 0) continue;
        Integer mag = abs(c);
        if (first) {
            if (c < 0) os << '-';
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        first = false;
        if (k == 0 || mag != 1) os << mag.get_str();
        if (k >= 1) {
            if (k == 0 || mag != 1) os << '*';
            os << var;
            if (k > 1) os << '^' << k;
        }
    }
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const IntPolynomial& p) { return os << p.to_string(); }

Integer resultant(const IntPolynomial& f, const IntPolynomial& g) {
    if (f.is_zero() && g.is_zero()) throw InvalidInput("resultant of two zero polynomials");
    if (f.is_zero() || g.is_zero()) {
        const IntPolynomial& other = f.is_zero() ? g : f;
        return other.degree() == 0 ? Integer(1) : Integer(0);
    }
    if (f.degree() == 0) return ipow(f.leading(), static_cast<unsigned long>(g.degree()));
    if (g.degree() == 0) return ipow(g.leading(), static_cast<unsigned long>(f.degree()));

    // Subresultant PRS on the primitive parts; the contents are restored via
    // Res(c*f, d*g) = c^deg g * d^deg f * Res(f, g).
    Integer cf = f.content();
    Integer cg = g.content();
    IntPolynomial a = f.divide_exact(cf);
    IntPolynomial b = g.divide_exact(cg);
    Integer scale = ipow(cf, static_cast<unsigned long>(g.degree())) *
                    ipow(cg, static_cast<unsigned long>(f.degree()));
    int sign = 1;
    if (a.degree() < b.degree()) {
        std::swap(a, b);
        if ((a.degree() & 1) && (b.degree() & 1)) sign = -1;
    }

    Integer gg = 1;
    Integer h = 1;
    while (b.degree() > 0) {
        const int delta = a.degree() - b.degree();
        if ((a.degree() & 1) && (b.degree() & 1)) sign = -sign;
        IntPolynomial r = IntPolynomial::pseudo_remainder(a, b);
        a = std::move(b);
        if (r.is_zero()) return 0;
        b = r.divide_exact(gg * ipow(h, static_cast<unsigned long>(delta)));
        gg = a.leading();
        if (delta == 0) {
            // h unchanged
        } else if (delta == 1) {
            h = gg;
        } else {
            Integer num = ipow(gg, static_cast<unsigned long>(delta));
            Integer den = ipow(h, static_cast<unsigned long>(delta - 1));
            mpz_divexact(h.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
        }
    }
    // b is a nonzero constant here.
    const unsigned long da = static_cast<unsigned long>(a.degree());
    Integer num = ipow(b.leading(), da);
    Integer den = ipow(h, da - 1);
    Integer last;
    mpz_divexact(last.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return sign * scale * last;
}

IntPolynomial gcd(const IntPolynomial& f, const IntPolynomial& g) {
    if (f.is_zero()) return g.primitive_part();
    if (g.is_zero()) return f.primitive_part();
    IntPolynomial a = f.primitive_part();
    IntPolynomial b = g.primitive_part();
    if (a.degree() < b.degree()) std::swap(a, b);
    while (!b.is_zero()) {
        IntPolynomial r = IntPolynomial::pseudo_remainder(a, b);
        a = std::move(b);
        b = r.primitive_part();
    }
    IntPolynomial d = a.primitive_part();
    return igcd(f.content(), g.content()) * d;
}

}  // namespace qfermat
