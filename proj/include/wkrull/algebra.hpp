#pragma once

// The monoid algebra Q[S] inside the group algebra Q[q(S)]: sparse exact
// arithmetic, monomial primes K[P], and the constructive procedures around
// them (product witness, bounded t-maximality check, monomial shifts, facet
// valuations).

#include "wkrull/integer.hpp"
#include "wkrull/monoid.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace wkrull {

/// Finite sum of c * X^e with exponents in q(S). Zero coefficients are never
/// stored; terms are ordered lexicographically by exponent.
class AlgebraElement {
public:
  using Terms = std::map<IntVector, Rational>;

  explicit AlgebraElement(AffineMonoid parent) : parent_(std::move(parent)) {}
  /// Throws DimensionMismatch or NotInQuotientGroup for a bad exponent.
  AlgebraElement(AffineMonoid parent, const Terms& terms);

  static AlgebraElement monomial(AffineMonoid parent, const IntVector& e,
                                 const Rational& c = 1);
  static AlgebraElement one(AffineMonoid parent);

  const AffineMonoid& parent() const { return parent_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Coefficient of X^e, zero if absent.
  Rational coefficient(const IntVector& e) const;
  /// Every exponent lies in S.
  bool in_monoid_algebra() const;

  /// `c1*X^[e1] + c2*X^[e2] + ...`, or `0`.
  std::string str() const;
  /// Inverse of str(). Throws ParseError.
  static AlgebraElement parse(AffineMonoid parent, const std::string& text);

  friend bool operator==(const AlgebraElement& a, const AlgebraElement& b) {
    return a.parent_ == b.parent_ && a.terms_ == b.terms_;
  }

private:
  AffineMonoid parent_;
  Terms terms_;
};

/// Throw ParentMismatch unless both operands share a parent.
AlgebraElement add(const AlgebraElement& f, const AlgebraElement& g);
AlgebraElement sub(const AlgebraElement& f, const AlgebraElement& g);
AlgebraElement mul(const AlgebraElement& f, const AlgebraElement& g);
AlgebraElement scale(const Rational& c, const AlgebraElement& f);

/// The ideal K[P] of Q[S] spanned by the monomials of a prime P of S.
struct MonomialPrime {
  AffineMonoid monoid;
  FacePrime prime;

  MonomialPrime(AffineMonoid s, FacePrime p);
  /// Every exponent of f lies in P. Throws ParentMismatch.
  bool contains(const AlgebraElement& f) const;
};

/// Total order on exponents used by the witness constructions: degree of the
/// reduced image, then lexicographic. Compatible with addition.
bool exponent_less(const AffineMonoid& s, const IntVector& a, const IntVector& b);

struct ProductWitness {
  IntVector exponent;      // s_u + t_v
  Rational coefficient;    // coefficient of X^exponent in f * g
  Rational predicted;      // a_u * b_v
};

/// With s_u, t_v the smallest exponents of f and g outside P, the coefficient
/// of X^(s_u + t_v) in f * g is a_u * b_v, so f * g is not in K[P]. The
/// returned data is checked before it is returned. Throws PreconditionViolated
/// when f or g lies in K[P] or has an exponent outside S.
ProductWitness prime_product_witness(const AlgebraElement& f, const AlgebraElement& g,
                                     const MonomialPrime& p);

enum class ClaimStatus { Verified, CounterexampleFound, Inconclusive };
std::string to_string(ClaimStatus s);

struct ClaimAResult {
  ClaimStatus status = ClaimStatus::Inconclusive;
  /// Degree bound of the searched box.
  std::int64_t box = 0;
  /// Exponents b_1..b_m in P with (b_1, ..., b_m, s)^{-1} = S for every
  /// exponent s of the reduced f.
  std::vector<IntVector> b_exponents;
  /// Exponents of f outside P.
  std::vector<IntVector> reduced_exponents;
  /// A monomial exponent d outside S with X^d in (X^b_1, ..., X^b_m, f)^{-1}.
  std::optional<IntVector> counterexample;
  std::string reason;
};

/// Bounded check that (K[P], f)_t = Q[S] for a height-one prime P of a weakly
/// Krull S, following the monomial reduction: every monomial X^d of
/// (X^b_1, ..., X^b_m, f)^{-1} in the box has d in S. Terms of f with exponent
/// in P are dropped first. Throws PreconditionViolated when S is not weakly
/// Krull, P is not height one, f has an exponent outside S, or f is in K[P].
ClaimAResult claimA_bounded_check(const AffineMonoid& s, const FacePrime& p,
                                  const AlgebraElement& f,
                                  std::optional<std::int64_t> degree_bound = std::nullopt);

struct ShiftWitness {
  IntVector shift;
  AlgebraElement shifted;
  /// An exponent of the shifted element outside P.
  IntVector outside;
};

struct ShiftResult {
  std::optional<ShiftWitness> witness;
  /// Degree bound on the face element y = shift + e that was searched.
  std::int64_t box = 0;
};

/// Searches s in q(S) with every exponent of X^s * f in S and one of them
/// outside P. Candidates are s = y - e for e an exponent of f and y in the
/// face of P, tried by degree of y, then by e in term order, then by y.
/// Throws PreconditionViolated for f = 0.
ShiftResult umt_monomial_shift_witness(const AffineMonoid& s, const FacePrime& p,
                                       const AlgebraElement& f,
                                       std::optional<std::int64_t> degree_bound = std::nullopt);

/// Minimum over the exponents of f of the primitive facet functional of a
/// height-one prime. Throws NotNormal and PreconditionViolated (f = 0, P not
/// height one).
Integer facet_valuation_extend(const AffineMonoid& s, const FacePrime& p,
                               const AlgebraElement& f);

} // namespace wkrull
