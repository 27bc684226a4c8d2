#pragma once

#include "qfermat/ntheory/integer.hpp"
#include "qfermat/ntheory/polynomial.hpp"

#include <memory>
#include <string>
#include <vector>

namespace qfermat {

/// Q[y]/(h) for a monic integral polynomial h, not necessarily irreducible
/// (all that the power-basis arithmetic needs is monicity).
class NumberField {
public:
    /// Throws InvalidInput if h is not monic of degree >= 1.
    explicit NumberField(IntPolynomial h);

    const IntPolynomial& defining_polynomial() const { return poly_; }
    std::size_t degree() const { return static_cast<std::size_t>(poly_.degree()); }

    /// Reduces a rational polynomial (lowest degree first) modulo h.
    std::vector<Rational> reduce(std::vector<Rational> coeffs) const;

    friend bool operator==(const NumberField& a, const NumberField& b) { return a.poly_ == b.poly_; }

private:
    IntPolynomial poly_;
};

using FieldPtr = std::shared_ptr<const NumberField>;

inline FieldPtr make_field(IntPolynomial h) { return std::make_shared<const NumberField>(std::move(h)); }

/// An element of a NumberField stored by its power-basis coordinates
/// 1, y, ..., y^(n-1) with exact rational entries.
class NumberFieldElement {
public:
    /// Throws InvalidInput unless coords.size() == field->degree().
    NumberFieldElement(FieldPtr field, std::vector<Rational> coords);

    static NumberFieldElement from_rational(FieldPtr field, const Rational& c);
    /// The class of y.
    static NumberFieldElement generator(FieldPtr field);

    const FieldPtr& field() const { return field_; }
    const std::vector<Rational>& coords() const { return coords_; }
    bool is_zero() const;
    bool is_rational() const;

    NumberFieldElement operator-() const;
    friend NumberFieldElement operator+(const NumberFieldElement& a, const NumberFieldElement& b);
    friend NumberFieldElement operator-(const NumberFieldElement& a, const NumberFieldElement& b);
    friend NumberFieldElement operator*(const NumberFieldElement& a, const NumberFieldElement& b);
    friend bool operator==(const NumberFieldElement& a, const NumberFieldElement& b);

    /// Horner evaluation of an integer polynomial at this element.
    NumberFieldElement evaluate(const IntPolynomial& p) const;

    /// Trace of multiplication-by-this.
    Rational trace() const;

    std::string to_string(char var = 'y') const;

private:
    void check_same_field(const NumberFieldElement& other) const;

    FieldPtr field_;
    std::vector<Rational> coords_;
};

/// Characteristic polynomial of multiplication-by-e on the power basis,
/// scaled to a primitive integer polynomial with positive leading
/// coefficient. Its roots are the conjugates of e (with multiplicity
/// [K : Q(e)]).
IntPolynomial element_char_poly(const NumberFieldElement& e);

}  // namespace qfermat
