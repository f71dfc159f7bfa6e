#pragma once

// Laurent polynomials over Q with dyadic exponents, i.e. elements of K[G_n]
// for G_n the subgroup of Q generated by 1/2^n, and the checks showing that
// K[Q] is not weakly Krull.

#include "wkrull/integer.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace wkrull {

/// Largest depth n accepted by the operations below.
inline constexpr int kMaxDepth = 16;

/// Finite sum of c * X^e with e a dyadic rational. Zero coefficients are
/// never stored; terms ascend by exponent.
class DyadicLaurentPoly {
public:
  using Terms = std::map<Rational, Rational>;

  DyadicLaurentPoly() = default;
  /// Throws PreconditionViolated for an exponent whose denominator is not a
  /// power of two.
  explicit DyadicLaurentPoly(const Terms& terms);

  static DyadicLaurentPoly monomial(const Rational& e, const Rational& c = 1);
  /// 1 + s * X^(1/2^k), for s = +1 or -1.
  static DyadicLaurentPoly one_plus(int k, int s = 1);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Least n with every exponent in G_n.
  int depth() const;
  std::string str() const;

  friend bool operator==(const DyadicLaurentPoly&, const DyadicLaurentPoly&) = default;

private:
  Terms terms_;
};

DyadicLaurentPoly operator+(const DyadicLaurentPoly& a, const DyadicLaurentPoly& b);
DyadicLaurentPoly operator-(const DyadicLaurentPoly& a, const DyadicLaurentPoly& b);
DyadicLaurentPoly operator*(const DyadicLaurentPoly& a, const DyadicLaurentPoly& b);

/// f = y^shift * (coeffs[0] + coeffs[1] y + ...) with y = X^(1/2^n). For
/// nonzero f, coeffs[0] and coeffs.back() are nonzero.
struct UnivariateImage {
  std::int64_t shift = 0;
  std::vector<Rational> coeffs;
};

/// Throws DepthExceeded when depth(f) > n or n is outside [0, kMaxDepth].
UnivariateImage to_univariate(const DyadicLaurentPoly& f, int n);

/// Irreducibility over Q of a polynomial given by ascending coefficients.
/// Constants are not irreducible. Throws PreconditionViolated for the zero
/// polynomial and BoundExceeded when the factor recombination would exceed
/// its search budget.
bool irreducible_over_q(const std::vector<Rational>& coeffs);

/// f is a prime element of K[G_n]: its univariate image, with the monomial
/// unit removed, is irreducible over Q.
bool is_prime_in_gn(const DyadicLaurentPoly& f, int n);

/// a divides b in K[G_n].
bool divides_in_gn(const DyadicLaurentPoly& a, const DyadicLaurentPoly& b, int n);

/// The only common divisors of a and b in K[G_n] are units.
bool coprime_in_gn(const DyadicLaurentPoly& a, const DyadicLaurentPoly& b, int n);

struct TelescopingResult {
  /// 1 + X^(1/2), ..., 1 + X^(1/2^n), 1 - X^(1/2^n).
  std::vector<DyadicLaurentPoly> factors;
  DyadicLaurentPoly product;
  /// product == 1 - X.
  bool holds = false;
};

/// Multiplies out the factorization of 1 - X at depth n. Throws
/// PreconditionViolated for n < 1 and DepthExceeded for n > kMaxDepth.
TelescopingResult telescoping_identity(int n);

struct RootExtension {
  /// b with b * (a/b) in G_n.
  Integer multiplier;
  /// b * (a/b) = a.
  Integer value;
  /// a = coefficient * (1/2^n), so coefficient = 2^n * a.
  Integer coefficient;
};

/// Throws PreconditionViolated for denominator < 1 and DepthExceeded for n
/// outside [0, kMaxDepth].
RootExtension root_extension_check(const Integer& numerator, const Integer& denominator,
                                   int n);

} // namespace wkrull
