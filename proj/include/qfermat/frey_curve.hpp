#pragma once

#include "qfermat/newform_store.hpp"
#include "qfermat/ntheory/gaussian.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace qfermat {

/// E_(A,B): y^2 = x^3 + 2(1+i)A x^2 + (-B^2 + iA^2) x over Q(i), the
/// Q-curve attached to a putative solution (A, B, C) of x^4 + y^4 = q z^p.
struct EllipticCurveOverQi {
    GaussianInteger a2;
    GaussianInteger a4;
    Integer A;
    Integer B;

    std::string to_string() const;
};

/// Requires gcd(A, B) = 1 and A even; throws InvalidInput otherwise.
EllipticCurveOverQi build_curve(const Integer& A, const Integer& B);

/// 16 a4^2 (a2^2 - 4 a4), which equals 64 (iA^2 - B^2)^2 (iA^2 + B^2).
GaussianInteger discriminant(const EllipticCurveOverQi& curve);

enum class Splitting { Split, Inert, Ramified };

std::string to_string(Splitting s);
Splitting splitting_in_qi(std::uint64_t t);

/// Projective point count of the reduction at a prime above t over the
/// residue field of size t^degree. Inert t (t = 3 mod 4) needs degree 2;
/// split t (t = 1 mod 4) needs degree 1 and picks the prime (t, i - r) with
/// r the smaller (prime_index 0) or larger (prime_index 1) square root of -1
/// mod t. Throws BadReduction when the chosen prime divides the
/// discriminant, InvalidInput for t = 2 or a mismatched degree.
std::uint64_t point_count(const EllipticCurveOverQi& curve, std::uint64_t t, unsigned degree, unsigned prime_index = 0);

struct FrobeniusDatum {
    std::uint64_t t = 0;
    Splitting splitting = Splitting::Inert;
    std::uint64_t residue_field_size = 0;
    std::uint64_t point_count = 0;
    /// residue_field_size + 1 - point_count
    std::int64_t trace = 0;
};

FrobeniusDatum frobenius_datum(const EllipticCurveOverQi& curve, std::uint64_t t, unsigned prime_index = 0);

/// For inert t: c >= 0 with 2c^2 = a_{t^2}(E) + 2t, i.e. the form's a_t is
/// +-c*sqrt(2). Throws CalibrationViolation if no such integer exists.
std::uint64_t inert_trace_scalar(const EllipticCurveOverQi& curve, std::uint64_t t);

struct CalibrationEntry {
    std::uint64_t t = 0;
    Splitting splitting = Splitting::Inert;
    /// Split t: t + 1 - #E. Inert t: a_{t^2}(E) + 2t (the square of a_t).
    std::int64_t curve_value = 0;
    /// Split t: a_t of the form. Inert t: a_t^2.
    std::int64_t form_value = 0;
};

/// Compares E_(0,1): y^2 = x^3 - x with a rational newform at every odd
/// prime t < bound: t + 1 - #E(F_t) = a_t for split t and
/// a_{t^2}(E) + 2t = a_t^2 for inert t. Throws CalibrationViolation on the
/// first mismatch; returns the checked entries otherwise.
std::vector<CalibrationEntry> calibrate(const NewformRecord& level32_form, std::uint64_t bound = 100);

}  // namespace qfermat
