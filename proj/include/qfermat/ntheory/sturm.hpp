#pragma once

#include "qfermat/ntheory/polynomial.hpp"

#include <vector>

namespace qfermat {

/// Sturm sequence of the squarefree part of p.
std::vector<IntPolynomial> sturm_sequence(const IntPolynomial& p);

/// Number of distinct real roots of p in (lo, +inf).
std::size_t count_real_roots_above(const IntPolynomial& p, const Rational& lo);

/// Number of distinct real roots of p in (lo, hi].
std::size_t count_real_roots(const IntPolynomial& p, const Rational& lo, const Rational& hi);

/// All real roots of p lie in [-2 sqrt(t), 2 sqrt(t)]. Decided exactly by
/// passing to the polynomial whose roots are the squares of the roots of p.
bool real_roots_within_hasse_bound(const IntPolynomial& p, const Integer& t);

}  // namespace qfermat
