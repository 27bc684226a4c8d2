#include "qfermat/ntheory/sturm.hpp"

#include "qfermat/error.hpp"

namespace qfermat {

namespace {

int sign(const Integer& v) { return sgn(v); }
int sign(const Rational& v) { return sgn(v); }

/// Sign variations at x, or at +inf when x is null.
std::size_t variations(const std::vector<IntPolynomial>& seq, const Rational* x) {
    std::size_t count = 0;
    int last = 0;
    for (const auto& p : seq) {
        const int s = x ? sign(p.evaluate(*x)) : sign(p.leading());
        if (s == 0) continue;
        if (last != 0 && s != last) ++count;
        last = s;
    }
    return count;
}

}  // namespace

std::vector<IntPolynomial> sturm_sequence(const IntPolynomial& p) {
    if (p.is_zero()) throw InvalidInput("Sturm sequence of the zero polynomial");
    IntPolynomial g = gcd(p, p.derivative());
    IntPolynomial sf = g.degree() > 0 ? IntPolynomial::exact_quotient(p, g.primitive_part()) : p;
    std::vector<IntPolynomial> seq{sf, sf.derivative()};
    while (!seq.back().is_zero() && seq.back().degree() > 0) {
        const auto& a = seq[seq.size() - 2];
        const auto& b = seq.back();
        IntPolynomial r = IntPolynomial::pseudo_remainder(a, b);
        // pseudo_remainder scales by lc(b)^(deg a - deg b + 1); undo a negative sign.
        const int e = a.degree() - b.degree() + 1;
        if (b.leading() < 0 && (e & 1)) r = -r;
        r = -r;
        if (r.is_zero()) break;
        Integer c = r.content();
        seq.push_back(r.divide_exact(c));
    }
    if (seq.back().is_zero()) seq.pop_back();
    return seq;
}

std::size_t count_real_roots_above(const IntPolynomial& p, const Rational& lo) {
    auto seq = sturm_sequence(p);
    return variations(seq, &lo) - variations(seq, nullptr);
}

std::size_t count_real_roots(const IntPolynomial& p, const Rational& lo, const Rational& hi) {
    if (hi < lo) return 0;
    auto seq = sturm_sequence(p);
    return variations(seq, &lo) - variations(seq, &hi);
}

bool real_roots_within_hasse_bound(const IntPolynomial& p, const Integer& t) {
    if (p.degree() < 1) return true;
    // p(x) = E(x^2) + x O(x^2); the roots of S(y) = E(y)^2 - y O(y)^2 are the
    // squares of the roots of p, and real roots of p give exactly the
    // non-negative real roots of S.
    std::vector<Integer> even, odd;
    const auto& c = p.coefficients();
    for (std::size_t k = 0; k < c.size(); ++k) (k % 2 == 0 ? even : odd).push_back(c[k]);
    IntPolynomial e(even), o(odd);
    IntPolynomial s = e * e - IntPolynomial{0, 1} * o * o;
    return count_real_roots_above(s, Rational(4 * t)) == 0;
}

}  // namespace qfermat
