#pragma once

#include "qfermat/ntheory/integer.hpp"

#include <optional>
#include <string>

namespace qfermat {

/// An element re + im*i of Z[i].
class GaussianInteger {
public:
    GaussianInteger() = default;
    GaussianInteger(Integer re, Integer im = 0) : re_(std::move(re)), im_(std::move(im)) {}
    GaussianInteger(long re, long im = 0) : re_(re), im_(im) {}

    static GaussianInteger i() { return {0, 1}; }

    const Integer& re() const { return re_; }
    const Integer& im() const { return im_; }
    bool is_zero() const { return re_ == 0 && im_ == 0; }
    bool is_unit() const { return norm() == 1; }

    Integer norm() const { return re_ * re_ + im_ * im_; }
    GaussianInteger conj() const { return {re_, -im_}; }

    friend GaussianInteger operator+(const GaussianInteger& a, const GaussianInteger& b) {
        return {a.re_ + b.re_, a.im_ + b.im_};
    }
    friend GaussianInteger operator-(const GaussianInteger& a, const GaussianInteger& b) {
        return {a.re_ - b.re_, a.im_ - b.im_};
    }
    GaussianInteger operator-() const { return {-re_, -im_}; }
    friend GaussianInteger operator*(const GaussianInteger& a, const GaussianInteger& b) {
        return {a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_};
    }
    friend bool operator==(const GaussianInteger& a, const GaussianInteger& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }

    GaussianInteger pow(unsigned long exp) const;

    /// a / b when b divides a exactly, otherwise nullopt.
    static std::optional<GaussianInteger> divide_exact(const GaussianInteger& a, const GaussianInteger& b);
    bool divides(const GaussianInteger& other) const { return divide_exact(other, *this).has_value(); }
    /// Associates differ by a unit factor (1, i, -1, -i).
    bool is_associate(const GaussianInteger& other) const;

    std::string to_string() const;

private:
    Integer re_ = 0;
    Integer im_ = 0;
};

/// Gaussian prime test: norm is a rational prime, or the element is an
/// associate of a rational prime congruent to 3 mod 4.
bool is_gaussian_prime(const GaussianInteger& pi);

/// Exponent of the Gaussian prime pi in z. Throws InfiniteValuation for
/// z = 0 and InvalidInput if pi is not a Gaussian prime.
unsigned gaussian_valuation(const GaussianInteger& z, const GaussianInteger& pi);

/// A Gaussian prime of norm p for a rational prime p = 2 or p = 1 mod 4,
/// normalized to a > b > 0 for a + b i (1 + i for p = 2). The other prime
/// above p is its conjugate.
GaussianInteger gaussian_prime_above(const Integer& p);

}  // namespace qfermat
