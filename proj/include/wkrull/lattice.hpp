#pragma once

// Exact integer-linear algebra and polyhedral kernel: Smith and Hermite forms,
// positive gradings, facets and face lattices of rational cones, Hilbert
// bases and bounded knapsack membership.

#include "wkrull/integer.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace wkrull {

/// Rational polyhedral cone generated by finitely many integer vectors.
///
/// Facets are primitive inner normals lying in the linear span of the cone,
/// so they are unique even when the cone is not full-dimensional. Equations
/// hold a primitive basis of the orthogonal complement of that span.
struct Cone {
  std::size_t ambient_dim = 0;
  std::size_t dimension = 0;
  bool pointed = true;
  /// Extreme rays (primitive) when pointed, otherwise the primitive
  /// directions of all generators.
  std::vector<IntVector> rays;
  std::vector<IntVector> facets;
  std::vector<IntVector> equations;

  bool contains(const IntVector& x) const;
};

/// A face of a cone together with the generators lying on it.
struct Face {
  /// Indices of all facets containing the face.
  std::vector<std::size_t> facets;
  /// Indices of the generators annihilated by every facet in `facets`.
  std::vector<std::size_t> support;
  std::size_t dimension = 0;

  friend bool operator==(const Face&, const Face&) = default;
};

struct SmithForm {
  IntMatrix diagonal;
  IntMatrix left;
  IntMatrix right;
};

/// left * m * right == diagonal with d1 | d2 | ... on the diagonal, all
/// nonnegative, and left, right unimodular.
SmithForm smith_normal_form(const IntMatrix& m);

/// Nonzero diagonal entries of the Smith form.
std::vector<Integer> invariant_factors(const IntMatrix& m);

/// Row Hermite normal form basis of the lattice spanned by `gens` in Z^dim.
IntMatrix lattice_basis(const std::vector<IntVector>& gens, std::size_t dim);

/// Primitive basis of { y : y . g = 0 for all g }, from the reduced row
/// echelon form (deterministic).
std::vector<IntVector> orthogonal_complement(const std::vector<IntVector>& gens,
                                             std::size_t dim);

/// Strictly positive integral primitive functional on the generators; the
/// smallest one in (L1 norm, lexicographic) order is returned.
/// Throws NotPositive when the generated cone contains a line.
IntVector positive_grading(const std::vector<IntVector>& gens);

/// Facet description of cone(gens). Supports ambient dimension <= 4.
Cone cone_of(const std::vector<IntVector>& gens);

/// All faces of c, sorted by decreasing dimension then by support.
std::vector<Face> face_lattice(const Cone& c, const std::vector<IntVector>& gens);

/// Minimal generating set of (c intersected with the lattice spanned by the
/// rows of lattice_basis), sorted lexicographically. Throws NotPointed.
std::vector<IntVector> hilbert_basis(const Cone& c, const IntMatrix& lattice_basis);

/// Lexicographically smallest nonnegative multiplicity vector m with
/// sum m_i gens_i == target, or nullopt when none exists. The grading must be
/// strictly positive on every generator; it bounds the search.
std::optional<std::vector<Integer>> solve_membership(
    const IntVector& target, const std::vector<IntVector>& gens,
    const IntVector& grading);

} // namespace wkrull
