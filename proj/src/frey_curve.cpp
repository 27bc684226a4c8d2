#include "qfermat/frey_curve.hpp"

#include "qfermat/error.hpp"
#include "qfermat/ntheory/factor.hpp"

#include <vector>

namespace qfermat {

namespace {

// " + (a)*x^k" with the zero, 1 and -1 cases folded in.
std::string term(const GaussianInteger& a, const std::string& mono) {
    if (a.re() == 0 && a.im() == 0) return "";
    if (a.im() == 0) {
        if (a.re() == 1) return " + " + mono;
        if (a.re() == -1) return " - " + mono;
        if (a.re() < 0) return " - " + Integer(-a.re()).get_str() + "*" + mono;
        return " + " + a.re().get_str() + "*" + mono;
    }
    return " + (" + a.to_string() + ")*" + mono;
}

}  // namespace

std::string EllipticCurveOverQi::to_string() const { return "y^2 = x^3" + term(a2, "x^2") + term(a4, "x"); }

EllipticCurveOverQi build_curve(const Integer& A, const Integer& B) {
    if (igcd(A, B) != 1) throw InvalidInput("E_(A,B) needs gcd(A, B) = 1");
    if (mpz_odd_p(A.get_mpz_t())) throw InvalidInput("E_(A,B) needs A even");
    EllipticCurveOverQi e;
    e.A = A;
    e.B = B;
    e.a2 = GaussianInteger(2 * A, 2 * A);
    e.a4 = GaussianInteger(-B * B, A * A);
    return e;
}

GaussianInteger discriminant(const EllipticCurveOverQi& curve) {
    const GaussianInteger& a2 = curve.a2;
    const GaussianInteger& a4 = curve.a4;
    return GaussianInteger(16) * a4 * a4 * (a2 * a2 - GaussianInteger(4) * a4);
}

std::string to_string(Splitting s) {
    switch (s) {
        case Splitting::Split: return "split";
        case Splitting::Inert: return "inert";
        case Splitting::Ramified: return "ramified";
    }
    return "?";
}

Splitting splitting_in_qi(std::uint64_t t) {
    if (t == 2) return Splitting::Ramified;
    return t % 4 == 1 ? Splitting::Split : Splitting::Inert;
}

namespace {

/// F_t or F_t[i]/(i^2 + 1); elements are indices re + t*im.
class ResidueField {
public:
    ResidueField(std::uint64_t t, bool quadratic) : t_(t), quadratic_(quadratic) {}

    std::uint64_t size() const { return quadratic_ ? t_ * t_ : t_; }
    std::uint64_t make(std::uint64_t re, std::uint64_t im) const { return re % t_ + (quadratic_ ? (im % t_) * t_ : 0); }
    std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
        return make(a % t_ + b % t_, a / t_ + b / t_);
    }
    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
        const std::uint64_t ar = a % t_, ai = a / t_, br = b % t_, bi = b / t_;
        return make(ar * br + (t_ - ai * bi % t_), ar * bi + ai * br);
    }

private:
    std::uint64_t t_;
    bool quadratic_;
};

std::uint64_t reduce(const Integer& n, std::uint64_t t) { return mod_u64(n, t); }

std::uint64_t sqrt_minus_one(std::uint64_t t, unsigned prime_index) {
    std::vector<std::uint64_t> roots;
    for (std::uint64_t r = 1; r < t; ++r)
        if ((r * r + 1) % t == 0) roots.push_back(r);
    if (roots.size() != 2) throw InvalidInput(std::to_string(t) + " does not split in Z[i]");
    return roots.at(prime_index);
}

}  // namespace

std::uint64_t point_count(const EllipticCurveOverQi& curve, std::uint64_t t, unsigned degree, unsigned prime_index) {
    if (t == 2) throw InvalidInput("point_count: t = 2 is not supported (ramified, bad reduction)");
    if (!is_probable_prime(Integer(static_cast<unsigned long>(t)))) throw InvalidInput(std::to_string(t) + " is not prime");
    if (t > 100'000) throw InvalidInput("point_count enumerates the residue field; t too large");
    const Splitting s = splitting_in_qi(t);
    if (s == Splitting::Inert && degree != 2) throw InvalidInput("inert t needs residue degree 2");
    if (s == Splitting::Split && degree != 1) throw InvalidInput("split t needs residue degree 1");
    if (prime_index > 1) throw InvalidInput("prime_index must be 0 or 1");

    const ResidueField k(t, s == Splitting::Inert);
    // Image of a Gaussian integer in the residue field.
    auto image = [&](const GaussianInteger& z) -> std::uint64_t {
        if (s == Splitting::Inert) return k.make(reduce(z.re(), t), reduce(z.im(), t));
        const std::uint64_t r = sqrt_minus_one(t, prime_index);
        return (reduce(z.re(), t) + reduce(z.im(), t) * r) % t;
    };
    if (image(discriminant(curve)) == 0)
        throw BadReduction("E_(" + curve.A.get_str() + "," + curve.B.get_str() + ") has bad reduction at the chosen prime above " +
                           std::to_string(t));

    const std::uint64_t a2 = image(curve.a2);
    const std::uint64_t a4 = image(curve.a4);
    const std::uint64_t q = k.size();
    std::vector<std::uint32_t> sqrt_count(q, 0);
    for (std::uint64_t y = 0; y < q; ++y) ++sqrt_count[k.mul(y, y)];
    std::uint64_t count = 1;  // point at infinity
    for (std::uint64_t x = 0; x < q; ++x) {
        const std::uint64_t x2 = k.mul(x, x);
        const std::uint64_t rhs = k.add(k.add(k.mul(x2, x), k.mul(a2, x2)), k.mul(a4, x));
        count += sqrt_count[rhs];
    }
    return count;
}

FrobeniusDatum frobenius_datum(const EllipticCurveOverQi& curve, std::uint64_t t, unsigned prime_index) {
    FrobeniusDatum d;
    d.t = t;
    d.splitting = splitting_in_qi(t);
    const unsigned degree = d.splitting == Splitting::Inert ? 2 : 1;
    d.residue_field_size = degree == 2 ? t * t : t;
    d.point_count = point_count(curve, t, degree, prime_index);
    d.trace = static_cast<std::int64_t>(d.residue_field_size + 1) - static_cast<std::int64_t>(d.point_count);
    // Hasse: |trace| <= 2 sqrt(size), i.e. trace^2 <= 4 size.
    if (static_cast<__int128>(d.trace) * d.trace > 4 * static_cast<__int128>(d.residue_field_size))
        throw CalibrationViolation("Hasse bound violated at t = " + std::to_string(t));
    return d;
}

std::uint64_t inert_trace_scalar(const EllipticCurveOverQi& curve, std::uint64_t t) {
    if (splitting_in_qi(t) != Splitting::Inert) throw InvalidInput("inert_trace_scalar needs t = 3 mod 4");
    const FrobeniusDatum d = frobenius_datum(curve, t, 0);
    const std::int64_t twice_square = d.trace + 2 * static_cast<std::int64_t>(t);
    if (twice_square < 0 || twice_square % 2 != 0 || !is_square(Integer(static_cast<long>(twice_square / 2))))
        throw CalibrationViolation("a_{t^2} + 2t = " + std::to_string(twice_square) + " is not twice a square at t = " +
                                   std::to_string(t) + " for E_(" + curve.A.get_str() + "," + curve.B.get_str() + ")");
    return isqrt(Integer(static_cast<long>(twice_square / 2))).get_ui();
}

std::vector<CalibrationEntry> calibrate(const NewformRecord& form, std::uint64_t bound) {
    if (form.dimension != 1) throw InvalidInput("calibration needs a rational newform");
    const EllipticCurveOverQi e = build_curve(0, 1);
    std::vector<CalibrationEntry> out;
    for (std::uint64_t t : primes_up_to(static_cast<std::uint32_t>(bound))) {
        if (t == 2 || t >= bound) continue;
        const Rational at = form.coefficient(t).coords()[0];
        if (at.get_den() != 1) throw CalibrationViolation(form.label + ": a_" + std::to_string(t) + " is not an integer");
        const std::int64_t a = at.get_num().get_si();
        CalibrationEntry entry;
        entry.t = t;
        entry.splitting = splitting_in_qi(t);
        const FrobeniusDatum d = frobenius_datum(e, t, 0);
        if (entry.splitting == Splitting::Split) {
            entry.curve_value = d.trace;
            entry.form_value = a;
            const FrobeniusDatum other = frobenius_datum(e, t, 1);
            if (other.trace != d.trace)
                throw CalibrationViolation("traces at the two primes above " + std::to_string(t) + " differ for y^2 = x^3 - x");
        } else {
            entry.curve_value = d.trace + 2 * static_cast<std::int64_t>(t);
            entry.form_value = a * a;
        }
        if (entry.curve_value != entry.form_value)
            throw CalibrationViolation("calibration mismatch at t = " + std::to_string(t) + ": curve gives " +
                                       std::to_string(entry.curve_value) + ", " + form.label + " gives " +
                                       std::to_string(entry.form_value));
        out.push_back(entry);
    }
    return out;
}

}  // namespace qfermat
