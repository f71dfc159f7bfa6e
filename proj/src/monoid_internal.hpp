#pragma once

// Reduced-coordinate engine shared by the monoid and algebra modules.

#include "wkrull/monoid.hpp"
#include "wkrull/point.hpp"

#include <mutex>
#include <unordered_map>
#include <unordered_set>

namespace wkrull::detail {

using PointSet = std::unordered_set<Point, PointHash>;

/// Lattice spanned by the generators on a face, with Smith data for deciding
/// membership and canonical residue classes modulo it.
struct FaceData {
  std::vector<std::size_t> on;   // reduced generators on the face
  std::vector<std::size_t> off;  // reduced generators off the face
  std::vector<std::size_t> facets;
  Point psi;                     // sum of the facets containing the face
  std::size_t lat_rank = 0;
  std::array<std::int64_t, kMaxDim> diag{};
  std::array<Point, kMaxDim> right_cols{};
  IntMatrix left;                // rows combine the face generators
  std::size_t height = 0;
};

struct MonoidData {
  std::size_t d = 0;
  std::vector<IntVector> gens;
  std::vector<std::string> warnings;
  IntMatrix basis;
  std::vector<std::size_t> pivots;
  std::size_t n = 0, u = 0, m = 0;
  IntMatrix to_red;    // m x n
  IntMatrix from_red;  // n x m
  IntMatrix unit_basis; // ambient rows spanning the unit group
  Cone cone;
  std::vector<Face> faces;

  std::vector<Point> rgens;
  std::vector<std::size_t> rgen_origin;
  std::vector<int> gen_to_red;
  std::vector<Point> rfacets;  // aligned with cone.facets
  Point grading;
  IntVector grading_vec;
  std::vector<std::int64_t> rdeg;
  std::int64_t maxdeg = 0;
  std::vector<Point> hilbert;
  std::vector<Point> modgens;
  Point conductor;
  std::int64_t cdeg = 0;
  bool normal = true;
  std::optional<Point> normal_witness;
  std::vector<FaceData> facedata;

  // Elements of R by degree up to table_degree.
  std::int64_t table_degree = 0;
  std::vector<std::vector<Point>> layers;
  PointSet table;
  /// Membership answers above table_degree that needed a descent.
  mutable std::unordered_map<Point, bool, PointHash> beyond_table;
  /// Per face: whether a class modulo the face lattice is reachable from the
  /// off-face generators.
  mutable std::vector<std::unordered_map<Point, bool, PointHash>> loc_memo;
  /// Guards both caches.
  mutable std::recursive_mutex cache_mutex;

  std::int64_t deg(const Point& x) const { return dot(grading, x); }
  bool in_cone(const Point& x) const;
  bool contains(const Point& x) const;
  /// Sorted by (degree, lex).
  std::vector<Point> elements_upto(std::int64_t degree) const;
  /// Lattice points of the cone with degree <= bound, sorted by (degree, lex).
  std::vector<Point> cone_points_upto(std::int64_t degree) const;

  std::optional<Point> reduce(const IntVector& x) const;
  Point reduce_checked(const IntVector& x) const;
  IntVector lift(const Point& z) const;

  /// Canonical class of x modulo the face lattice.
  Point face_class(const FaceData& f, const Point& x) const;
  /// x in R + gp(F); returns f in R cap F with x + f in R.
  std::optional<Point> localize(std::size_t face, const Point& x) const;
  /// x in R + gp(F), without a certificate.
  bool localizes(std::size_t face, const Point& x) const;
  bool class_reachable(std::size_t face, const Point& x) const;
  bool on_face(std::size_t face, const Point& x) const {
    return dot(facedata[face].psi, x) == 0;
  }

  /// Minimal generators of (R : I) from the box {degree <= bound}; throws
  /// BoundExceeded for generators in the guard band.
  std::vector<Point> dual(const std::vector<Point>& ideal, std::int64_t bound,
                          std::vector<Point>* all_found = nullptr) const;
  std::int64_t default_dual_bound(const std::vector<Point>& ideal) const;
  std::vector<Point> prime_gens(std::size_t face) const;
};

Point to_point_checked(const IntVector& v, std::size_t m);
std::vector<Point> sort_by_degree(std::vector<Point> v, const Point& grading);

} // namespace wkrull::detail
