#pragma once

// Dense univariate polynomials over Q and Z, ascending coefficients, with no
// trailing zeros. The zero polynomial is the empty vector.

#include "wkrull/integer.hpp"

#include <utility>
#include <vector>

namespace wkrull::detail {

using QPoly = std::vector<Rational>;
using ZPoly = std::vector<Integer>;

template <class P>
void trim(P& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

/// Degree, -1 for zero.
template <class P>
long degree(const P& f) {
  return static_cast<long>(f.size()) - 1;
}

/// (quotient, remainder). Throws PreconditionViolated for b = 0.
std::pair<QPoly, QPoly> divrem(const QPoly& a, const QPoly& b);
/// Monic gcd; zero only when both inputs are zero.
QPoly gcd(QPoly a, QPoly b);
QPoly derivative(const QPoly& f);

/// Primitive integer polynomial with positive leading coefficient, equal to f
/// up to a nonzero rational factor.
ZPoly primitive_part(const QPoly& f);

} // namespace wkrull::detail
