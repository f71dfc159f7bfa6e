#pragma once

// Affine monoids S inside Z^d: membership, saturation, prime spectrum via the
// faces of cone(S), fractional ideals with their duals and v-closures, and
// deciders for the Krull property ladder.
//
// Units are split off at construction. Every decision is taken on the reduced
// monoid R = S / S^x, which is pointed and lives in Z^m with q(R) = Z^m;
// vectors crossing the public interface are always in ambient coordinates.

#include "wkrull/integer.hpp"
#include "wkrull/lattice.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace wkrull {

namespace detail {
struct MonoidData;
}

class AffineMonoid {
public:
  /// Zero vectors are dropped and duplicates removed, each with a warning.
  /// Throws DimensionMismatch, UnsupportedDimension (d > 4), UnsupportedUnits
  /// (unit group not saturated in q(S)) and BoundExceeded (conductor search).
  static AffineMonoid build(std::size_t ambient_dim, std::vector<IntVector> generators);

  std::size_t ambient_dim() const;
  /// Nonzero, deduplicated, sorted.
  const std::vector<IntVector>& generators() const;
  /// Hermite basis of q(S), one row per basis vector.
  const IntMatrix& lattice_basis() const;
  std::size_t rank() const;
  std::size_t unit_rank() const;
  std::size_t reduced_rank() const;
  /// Strictly positive grading of the reduced monoid, in reduced coordinates.
  const IntVector& grading() const;
  /// cone(S) in ambient coordinates and its faces, indexed by generators().
  const Cone& cone() const;
  const std::vector<Face>& faces() const;
  const std::vector<std::string>& warnings() const;

  /// Coordinates of x in the reduced group Z^m, or nullopt if x is not in q(S).
  std::optional<IntVector> to_reduced(const IntVector& x) const;
  /// Canonical representative in q(S) of a reduced vector.
  IntVector from_reduced(const IntVector& z) const;
  /// Grading of the reduced image. Throws NotInQuotientGroup.
  Integer degree(const IntVector& x) const;
  /// x in S. Throws NotInQuotientGroup.
  bool contains(const IntVector& x) const;

  /// Conductor c: minimal degree element (ties lexicographic) with
  /// c + root_closure(S) inside S.
  IntVector conductor() const;
  /// Largest degree of a generator of the reduced monoid.
  std::int64_t max_generator_degree() const;
  bool is_normal() const;

  const detail::MonoidData& data() const { return *data_; }
  friend bool operator==(const AffineMonoid& a, const AffineMonoid& b) {
    return a.data_ == b.data_;
  }

private:
  explicit AffineMonoid(std::shared_ptr<const detail::MonoidData> d) : data_(std::move(d)) {}
  std::shared_ptr<const detail::MonoidData> data_;
};

/// Multiplicities over S.generators() (zero for units) plus a remainder in the
/// unit group: target = sum m_i g_i + unit_part.
struct MembershipCertificate {
  std::vector<Integer> multiplicities;
  IntVector unit_part;
};

/// Throws NotInQuotientGroup.
std::optional<MembershipCertificate> membership(const AffineMonoid& s, const IntVector& g);

/// The saturation cone(S) intersected with q(S), generated by its Hilbert basis.
AffineMonoid root_closure(const AffineMonoid& s);

struct KrullResult {
  bool value = true;
  /// First Hilbert basis element of the root closure missing from S.
  std::optional<IntVector> witness;
};
KrullResult is_krull(const AffineMonoid& s);

/// The prime S \ F of a proper face F.
struct FacePrime {
  std::size_t face_index = 0;
  Face face;
  /// Generators of S off the face; they generate the prime as an S-ideal.
  std::vector<IntVector> ideal_generators;
  /// Length of the longest chain of faces from cone(S) down to F.
  std::size_t height = 0;

  friend bool operator==(const FacePrime& a, const FacePrime& b) {
    return a.face_index == b.face_index;
  }
};

/// One prime per proper face, ordered by height then face support.
std::vector<FacePrime> prime_spectrum(const AffineMonoid& s);
/// The height-one primes.
std::vector<FacePrime> height_one_primes(const AffineMonoid& s);
/// x in P.
bool prime_contains(const AffineMonoid& s, const FacePrime& p, const IntVector& x);
/// P_F contained in P_G.
bool prime_included(const FacePrime& p, const FacePrime& q);

struct LocalizationResult {
  bool member = false;
  /// f in the face submonoid with g + f in S.
  std::optional<IntVector> certificate;
};

/// g in S_P, decided exactly: S_P = S + gp(F), and the search over
/// representations is finite because the functional vanishing exactly on F
/// bounds it. Throws NotInQuotientGroup.
LocalizationResult localization_membership(const AffineMonoid& s, const FacePrime& p,
                                           const IntVector& g);

/// Union of the translates g + S over its generators.
struct FractionalIdeal {
  std::vector<IntVector> generators;
  AffineMonoid parent;

  FractionalIdeal(AffineMonoid s, std::vector<IntVector> gens);
  /// Equality of the denoted subsets.
  bool same_as(const FractionalIdeal& o) const;
  /// x in the ideal.
  bool contains(const IntVector& x) const;
};

FractionalIdeal principal_ideal(const AffineMonoid& s, const IntVector& g);
FractionalIdeal prime_ideal(const AffineMonoid& s, const FacePrime& p);

struct BoundOptions {
  /// Overrides the derived degree bound of dual computations and the search
  /// box of the direct weakly Krull oracle.
  std::optional<std::int64_t> degree_bound;
};

/// (S : I), minimally generated. Throws BoundExceeded when a generator lands
/// in the guard band below the degree bound.
FractionalIdeal ideal_dual(const FractionalIdeal& ideal, const BoundOptions& opts = {});
FractionalIdeal v_closure(const FractionalIdeal& ideal, const BoundOptions& opts = {});

enum class Tri { True, False, Unsupported };
std::string to_string(Tri t);

struct PrimeStatus {
  FacePrime prime;
  Tri t_prime = Tri::Unsupported;
  Tri t_max = Tri::Unsupported;
  std::optional<std::int64_t> failed_bound;
  /// For a t-prime of height >= 2: g with g + P inside S and g not in S_P,
  /// so that P = (S : g) intersected with S is divisorial.
  std::optional<IntVector> colon_witness;
};

struct TPrimeClassification {
  std::vector<PrimeStatus> primes;
  std::vector<FacePrime> t_primes;
  std::vector<FacePrime> t_max;
};

TPrimeClassification classify_t_primes(const AffineMonoid& s, const BoundOptions& opts = {});

struct Verdict {
  Tri value = Tri::Unsupported;
  /// Machine-readable label of the witness or of the reason for `Unsupported`.
  std::string reason;
  std::vector<IntVector> witness;
  std::optional<std::size_t> prime_face;
  std::optional<std::int64_t> failed_bound;
  /// Two distinct factorizations into atoms of witness[0].
  std::vector<std::vector<IntVector>> factorizations;
};

Verdict is_weakly_krull(const AffineMonoid& s, const BoundOptions& opts = {});
Verdict is_weakly_krull(const AffineMonoid& s, const TPrimeClassification& cls);
Verdict is_generalized_krull(const AffineMonoid& s, const BoundOptions& opts = {});
Verdict is_generalized_krull(const AffineMonoid& s, const Verdict& weakly_krull);

/// Valuation criterion for S_P at a height-one prime. On failure the witness
/// is {x, k*x}: x not in S_P while k*x is.
Verdict localization_is_valuation(const AffineMonoid& s, const FacePrime& p);

/// Invariant factors of Cl(S): torsion factors > 1 followed by one 0 per free
/// summand. Throws NotNormal.
std::vector<Integer> divisor_class_group(const AffineMonoid& s);

Verdict is_gcd(const AffineMonoid& s);
Verdict is_weakly_factorial(const AffineMonoid& s);

/// Exponents of the primary component of alpha + S at P inside the box
/// {degree <= box_bound}: the elements of (alpha + S_P) intersected with S.
/// Returned modulo units, sorted. Throws PreconditionViolated.
std::vector<IntVector> primary_component_exponents(const AffineMonoid& s,
                                                   const IntVector& alpha,
                                                   const FacePrime& p,
                                                   std::int64_t box_bound);

struct ClaimBResult {
  bool holds = true;
  std::int64_t box = 0;
  std::size_t primes_used = 0;
  std::size_t elements_checked = 0;
  /// Element where the intersection and alpha + S differ.
  std::optional<IntVector> mismatch;
};

/// Intersection over height-one P containing alpha of the primary components
/// compared with alpha + S in the box. The default box is
/// degree(alpha) + degree(conductor) + 2 * max generator degree.
ClaimBResult claim_b_identity(const AffineMonoid& s, const IntVector& alpha,
                              std::optional<std::int64_t> box_bound = std::nullopt);

struct OracleResult {
  bool weakly_krull = true;
  /// A true verdict only covers the searched box.
  bool bounded = true;
  std::int64_t box = 0;
  std::optional<IntVector> witness;
};

/// Searches g in root_closure(S) \ S of degree <= box lying in S_P for every
/// height-one P. The default box is degree(conductor) + 2 * max generator degree.
OracleResult wk_oracle_direct(const AffineMonoid& s, const BoundOptions& opts = {});

/// Brute-force primality of every S \ F on the elements of degree <= box.
/// Returns the faces that fail.
std::vector<std::size_t> check_face_primes(const AffineMonoid& s, std::int64_t box);

struct AnalysisOptions {
  BoundOptions bounds;
};

struct PropertyReport {
  Verdict normal_krull;
  Verdict weakly_krull;
  Verdict generalized_krull;
  Verdict gcd_factorial;
  Verdict weakly_factorial;
  std::vector<PrimeStatus> spectrum;
  std::optional<std::vector<Integer>> class_group;
  OracleResult oracle;
  std::vector<std::string> warnings;
};

PropertyReport analyze(const AffineMonoid& s, const AnalysisOptions& opts = {});

} // namespace wkrull
