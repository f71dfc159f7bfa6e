#pragma once

// Machine-word lattice points for the enumeration kernels. All searches run in
// ambient dimension <= 4, so a point is a fixed array padded with zeros.

#include "wkrull/integer.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace wkrull {

inline constexpr std::size_t kMaxDim = 4;

struct Point {
  std::array<std::int64_t, kMaxDim> v{};

  std::int64_t& operator[](std::size_t i) { return v[i]; }
  std::int64_t operator[](std::size_t i) const { return v[i]; }

  Point& operator+=(const Point& o) {
    for (std::size_t i = 0; i < kMaxDim; ++i) v[i] += o.v[i];
    return *this;
  }
  Point& operator-=(const Point& o) {
    for (std::size_t i = 0; i < kMaxDim; ++i) v[i] -= o.v[i];
    return *this;
  }
  friend Point operator+(Point a, const Point& b) { return a += b; }
  friend Point operator-(Point a, const Point& b) { return a -= b; }
  friend Point operator-(Point a) {
    for (auto& x : a.v) x = -x;
    return a;
  }
  friend Point operator*(std::int64_t k, Point a) {
    for (auto& x : a.v) x *= k;
    return a;
  }
  friend bool operator==(const Point& a, const Point& b) { return a.v == b.v; }
  friend bool operator!=(const Point& a, const Point& b) { return a.v != b.v; }
  friend bool operator<(const Point& a, const Point& b) { return a.v < b.v; }

  bool is_zero() const {
    for (auto x : v)
      if (x != 0) return false;
    return true;
  }
};

inline std::int64_t dot(const Point& a, const Point& b) {
  std::int64_t s = 0;
  for (std::size_t i = 0; i < kMaxDim; ++i) s += a.v[i] * b.v[i];
  return s;
}

struct PointHash {
  std::size_t operator()(const Point& p) const noexcept {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (auto x : p.v) {
      h ^= static_cast<std::uint64_t>(x) + 0x9e3779b97f4a7c15ULL + (h << 6) +
           (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }
};

/// Throws UnsupportedDimension when v has more than kMaxDim coordinates.
Point to_point(const IntVector& v);
IntVector to_int_vector(const Point& p, std::size_t dim);

/// The closed halfspace { x : normal . x >= offset }.
struct Halfspace {
  Point normal;
  std::int64_t offset = 0;

  bool contains(const Point& x) const { return dot(normal, x) >= offset; }
};

/// Calls visit(x) for every lattice point of the polytope cut out by the
/// halfspaces, in lexicographic order. The polytope must be bounded; the
/// bounding box is taken from its vertices.
void for_each_lattice_point(std::size_t dim,
                            std::span<const Halfspace> constraints,
                            const std::function<void(const Point&)>& visit);

std::vector<Point> lattice_points(std::size_t dim,
                                  std::span<const Halfspace> constraints);

} // namespace wkrull
