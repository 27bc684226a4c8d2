#include "qfermat/ntheory/number_field.hpp"

#include "qfermat/error.hpp"

#include <sstream>

namespace qfermat {

NumberField::NumberField(IntPolynomial h) : poly_(std::move(h)) {
    if (poly_.degree() < 1 || poly_.leading() != 1)
        throw InvalidInput("number field polynomial must be monic of positive degree: " + poly_.to_string('y'));
}

std::vector<Rational> NumberField::reduce(std::vector<Rational> c) const {
    const std::size_t n = degree();
    const auto& h = poly_.coefficients();
    for (std::size_t k = c.size(); k-- > n;) {
        if (c[k] == 0) continue;
        const Rational lead = c[k];
        // y^k = y^(k-n) * y^n and y^n = -(h_0 + ... + h_{n-1} y^(n-1)).
        for (std::size_t j = 0; j < n; ++j)
            if (h[j] != 0) c[k - n + j] -= lead * h[j];
        c[k] = 0;
    }
    c.resize(n);
    return c;
}

NumberFieldElement::NumberFieldElement(FieldPtr field, std::vector<Rational> coords)
    : field_(std::move(field)), coords_(std::move(coords)) {
    if (!field_) throw InvalidInput("number field element without a field");
    if (coords_.size() != field_->degree())
        throw InvalidInput("coordinate vector has length " + std::to_string(coords_.size()) + ", field degree is " +
                           std::to_string(field_->degree()));
}

NumberFieldElement NumberFieldElement::from_rational(FieldPtr field, const Rational& c) {
    std::vector<Rational> v(field->degree());
    v[0] = c;
    return {std::move(field), std::move(v)};
}

NumberFieldElement NumberFieldElement::generator(FieldPtr field) {
    std::vector<Rational> v{0, 1};
    auto reduced = field->reduce(std::move(v));
    return {std::move(field), std::move(reduced)};
}

bool NumberFieldElement::is_zero() const {
    for (const auto& c : coords_)
        if (c != 0) return false;
    return true;
}

bool NumberFieldElement::is_rational() const {
    for (std::size_t k = 1; k < coords_.size(); ++k)
        if (coords_[k] != 0) return false;
    return true;
}

void NumberFieldElement::check_same_field(const NumberFieldElement& other) const {
    if (field_ != other.field_ && !(*field_ == *other.field_))
        throw InvalidInput("number field elements live in different fields");
}

NumberFieldElement NumberFieldElement::operator-() const {
    auto v = coords_;
    for (auto& c : v) c = -c;
    return {field_, std::move(v)};
}

NumberFieldElement operator+(const NumberFieldElement& a, const NumberFieldElement& b) {
    a.check_same_field(b);
    auto v = a.coords_;
    for (std::size_t k = 0; k < v.size(); ++k) v[k] += b.coords_[k];
    return {a.field_, std::move(v)};
}

NumberFieldElement operator-(const NumberFieldElement& a, const NumberFieldElement& b) { return a + (-b); }

NumberFieldElement operator*(const NumberFieldElement& a, const NumberFieldElement& b) {
    a.check_same_field(b);
    const std::size_t n = a.coords_.size();
    std::vector<Rational> prod(2 * n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        if (a.coords_[i] == 0) continue;
        for (std::size_t j = 0; j < n; ++j) prod[i + j] += a.coords_[i] * b.coords_[j];
    }
    return {a.field_, a.field_->reduce(std::move(prod))};
}

bool operator==(const NumberFieldElement& a, const NumberFieldElement& b) {
    a.check_same_field(b);
    return a.coords_ == b.coords_;
}

NumberFieldElement NumberFieldElement::evaluate(const IntPolynomial& p) const {
    auto acc = from_rational(field_, 0);
    const auto& c = p.coefficients();
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * *this + from_rational(field_, Rational(*it));
    return acc;
}

Rational NumberFieldElement::trace() const {
    const std::size_t n = coords_.size();
    Rational tr = 0;
    std::vector<Rational> basis(n);
    for (std::size_t j = 0; j < n; ++j) {
        std::fill(basis.begin(), basis.end(), Rational(0));
        basis[j] = 1;
        tr += (*this * NumberFieldElement(field_, basis)).coords_[j];
    }
    return tr;
}

std::string NumberFieldElement::to_string(char var) const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = coords_.size(); k-- > 0;) {
        const Rational& c = coords_[k];
        if (c == 0) continue;
        if (!first) os << (c < 0 ? " - " : " + ");
        else if (c < 0) os << '-';
        Rational m = abs(c);
        if (k == 0 || m != 1) os << m.get_str();
        if (k > 0) {
            if (m != 1) os << '*';
            os << var;
            if (k > 1) os << '^' << k;
        }
        first = false;
    }
    return first ? "0" : os.str();
}

IntPolynomial element_char_poly(const NumberFieldElement& e) {
    const std::size_t n = e.coords().size();
    const FieldPtr& field = e.field();
    // Column j of the multiplication matrix holds the coordinates of e * y^j.
    std::vector<std::vector<Rational>> mat(n, std::vector<Rational>(n));
    NumberFieldElement col = e;
    const NumberFieldElement y = NumberFieldElement::generator(field);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < n; ++i) mat[i][j] = col.coords()[i];
        if (j + 1 < n) col = col * y;
    }

    // Faddeev-LeVerrier: M_k = A M_{k-1} + c_{n-k+1} I, c_{n-k} = -tr(A M_k)/k.
    std::vector<Rational> coeffs(n + 1);
    coeffs[n] = 1;
    std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n));
    for (std::size_t k = 1; k <= n; ++k) {
        std::vector<std::vector<Rational>> am(n, std::vector<Rational>(n));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t l = 0; l < n; ++l) {
                if (mat[i][l] == 0) continue;
                for (std::size_t j = 0; j < n; ++j) am[i][j] += mat[i][l] * m[l][j];
            }
        for (std::size_t i = 0; i < n; ++i) am[i][i] += coeffs[n - k + 1];
        m = std::move(am);
        Rational tr = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t l = 0; l < n; ++l) tr += mat[i][l] * m[l][i];
        coeffs[n - k] = -tr / static_cast<long>(k);
    }

    Integer den = 1;
    for (const auto& c : coeffs) den = ilcm(den, c.get_den());
    std::vector<Integer> ints(n + 1);
    for (std::size_t k = 0; k <= n; ++k) {
        Rational scaled = coeffs[k] * den;
        ints[k] = scaled.get_num();
    }
    return IntPolynomial(std::move(ints)).primitive_part();
}

}  // namespace qfermat
