#pragma once

#include "qfermat/ntheory/integer.hpp"

#include <initializer_list>
#include <iosfwd>
#include <string>
#include <vector>

namespace qfermat {

/// Dense univariate polynomial over Z, coefficients stored lowest degree
/// first. The representation is always normalized: no trailing zeros, so the
/// zero polynomial has an empty coefficient vector.
class IntPolynomial {
public:
    IntPolynomial() = default;
    explicit IntPolynomial(std::vector<Integer> coeffs);
    IntPolynomial(std::initializer_list<long> coeffs);

    static IntPolynomial constant(const Integer& c);
    static IntPolynomial monomial(const Integer& c, std::size_t degree);
    /// x - root
    static IntPolynomial linear_root(const Integer& root);

    bool is_zero() const { return coeffs_.empty(); }
    /// -1 for the zero polynomial.
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<Integer>& coefficients() const { return coeffs_; }
    Integer coeff(std::size_t k) const;
    const Integer& leading() const;

    /// Non-negative gcd of the coefficients (0 for the zero polynomial).
    Integer content() const;
    /// Divides out the content; the sign of the leading coefficient is made
    /// positive.
    IntPolynomial primitive_part() const;

    Integer evaluate(const Integer& x) const;
    Rational evaluate(const Rational& x) const;
    IntPolynomial derivative() const;

    /// lc(b)^(deg a - deg b + 1) * a = q * b + r with deg r < deg b.
    static IntPolynomial pseudo_remainder(const IntPolynomial& a, const IntPolynomial& b);
    /// Exact division by an integer; throws if some coefficient is not divisible.
    IntPolynomial divide_exact(const Integer& d) const;
    /// a / b when b divides a in Z[x]; throws InvalidInput otherwise.
    static IntPolynomial exact_quotient(const IntPolynomial& a, const IntPolynomial& b);

    IntPolynomial operator-() const;
    friend IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b);
    friend IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b);
    friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b);
    friend IntPolynomial operator*(const Integer& c, const IntPolynomial& a);
    friend bool operator==(const IntPolynomial& a, const IntPolynomial& b) = default;

    IntPolynomial pow(unsigned exp) const;

    std::string to_string(char var = 'x') const;

private:
    void normalize();
    std::vector<Integer> coeffs_;
};

std::ostream& operator<<(std::ostream& os, const IntPolynomial& p);

/// Res(f, g) = lc(f)^deg(g) * prod g(alpha) over the roots alpha of f, i.e.
/// the determinant of the Sylvester matrix. Computed with the subresultant
/// pseudo-remainder sequence. Res(0, c) = 1 for a nonzero constant c and
/// Res(0, g) = 0 for nonconstant g. Throws InvalidInput when both are zero.
Integer resultant(const IntPolynomial& f, const IntPolynomial& g);

/// Primitive gcd over Z[x] with positive leading coefficient.
IntPolynomial gcd(const IntPolynomial& f, const IntPolynomial& g);

}  // namespace qfermat
