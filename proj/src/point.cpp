#include "wkrull/point.hpp"

#include "wkrull/errors.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <optional>

namespace wkrull {

Point to_point(const IntVector& v) {
  if (v.size() > kMaxDim)
    throw UnsupportedDimension("dimension " + std::to_string(v.size()) +
                               " exceeds the supported maximum of 4");
  Point p;
  for (std::size_t i = 0; i < v.size(); ++i) p.v[i] = to_small(v[i]);
  return p;
}

IntVector to_int_vector(const Point& p, std::size_t dim) {
  IntVector out(dim);
  for (std::size_t i = 0; i < dim; ++i) out[i] = static_cast<long>(p.v[i]);
  return out;
}

namespace {

using i128 = __int128;

i128 det_small(const std::array<std::array<i128, kMaxDim>, kMaxDim>& a,
               std::size_t n) {
  switch (n) {
  case 0:
    return 1;
  case 1:
    return a[0][0];
  case 2:
    return a[0][0] * a[1][1] - a[0][1] * a[1][0];
  case 3:
    return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
           a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
           a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
  default: {
    i128 s = 0;
    for (std::size_t c = 0; c < 4; ++c) {
      std::array<std::array<i128, kMaxDim>, kMaxDim> minor{};
      for (std::size_t i = 1; i < 4; ++i) {
        std::size_t cc = 0;
        for (std::size_t j = 0; j < 4; ++j)
          if (j != c) minor[i - 1][cc++] = a[i][j];
      }
      i128 term = a[0][c] * det_small(minor, 3);
      s += (c % 2 == 0) ? term : -term;
    }
    return s;
  }
  }
}

// Floor and ceil of num/den for den > 0.
i128 floor_q(i128 num, i128 den) {
  i128 q = num / den;
  if ((num % den != 0) && (num < 0)) --q;
  return q;
}
i128 ceil_q(i128 num, i128 den) {
  i128 q = num / den;
  if ((num % den != 0) && (num > 0)) ++q;
  return q;
}

struct Box {
  std::array<std::int64_t, kMaxDim> lo{};
  std::array<std::int64_t, kMaxDim> hi{};
  bool empty = true;
};

Box vertex_box_small(std::size_t dim, std::span<const Halfspace> cs) {
  Box box;
  std::size_t k = cs.size();
  if (k < dim) return box;
  std::vector<std::size_t> idx(dim);
  for (std::size_t i = 0; i < dim; ++i) idx[i] = i;
  std::array<i128, kMaxDim> lo{}, hi{};
  while (true) {
    std::array<std::array<i128, kMaxDim>, kMaxDim> a{};
    for (std::size_t r = 0; r < dim; ++r)
      for (std::size_t c = 0; c < dim; ++c) a[r][c] = cs[idx[r]].normal[c];
    i128 d = det_small(a, dim);
    if (d != 0) {
      std::array<i128, kMaxDim> num{};
      for (std::size_t c = 0; c < dim; ++c) {
        auto ac = a;
        for (std::size_t r = 0; r < dim; ++r) ac[r][c] = cs[idx[r]].offset;
        num[c] = det_small(ac, dim);
      }
      if (d < 0) {
        d = -d;
        for (std::size_t c = 0; c < dim; ++c) num[c] = -num[c];
      }
      bool feasible = true;
      for (const auto& h : cs) {
        i128 s = 0;
        for (std::size_t c = 0; c < dim; ++c) s += i128(h.normal[c]) * num[c];
        if (s < i128(h.offset) * d) {
          feasible = false;
          break;
        }
      }
      if (feasible) {
        for (std::size_t c = 0; c < dim; ++c) {
          i128 f = floor_q(num[c], d), g = ceil_q(num[c], d);
          if (box.empty) {
            lo[c] = g;
            hi[c] = f;
          } else {
            lo[c] = std::min(lo[c], g);
            hi[c] = std::max(hi[c], f);
          }
        }
        box.empty = false;
      }
    }
    // next combination
    std::size_t i = dim;
    while (i > 0 && idx[i - 1] == k - dim + i - 1) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t j = i; j < dim; ++j) idx[j] = idx[j - 1] + 1;
  }
  if (!box.empty) {
    for (std::size_t c = 0; c < dim; ++c) {
      box.lo[c] = static_cast<std::int64_t>(lo[c]);
      box.hi[c] = static_cast<std::int64_t>(hi[c]);
    }
  }
  return box;
}

bool fits_small(std::span<const Halfspace> cs) {
  for (const auto& h : cs) {
    for (auto x : h.normal.v)
      if (std::llabs(x) > (std::int64_t(1) << 20)) return false;
    if (std::llabs(h.offset) > (std::int64_t(1) << 30)) return false;
  }
  return true;
}

} // namespace

void for_each_lattice_point(std::size_t dim,
                            std::span<const Halfspace> constraints,
                            const std::function<void(const Point&)>& visit) {
  if (dim > kMaxDim) throw UnsupportedDimension("enumeration dimension > 4");
  if (dim == 0) {
    Point z;
    for (const auto& h : constraints)
      if (!h.contains(z)) return;
    visit(z);
    return;
  }
  if (!fits_small(constraints))
    throw OverflowError("polytope data exceeds the enumeration range");
  Box box = vertex_box_small(dim, constraints);
  if (box.empty) return;
  Point x;
  for (std::size_t c = 0; c < dim; ++c) x[c] = box.lo[c];
  while (true) {
    bool inside = true;
    for (const auto& h : constraints)
      if (!h.contains(x)) {
        inside = false;
        break;
      }
    if (inside) visit(x);
    std::size_t c = dim;
    while (c > 0) {
      --c;
      if (x[c] < box.hi[c]) {
        ++x[c];
        for (std::size_t j = c + 1; j < dim; ++j) x[j] = box.lo[j];
        break;
      }
      if (c == 0) return;
    }
  }
}

std::vector<Point> lattice_points(std::size_t dim,
                                  std::span<const Halfspace> constraints) {
  std::vector<Point> out;
  for_each_lattice_point(dim, constraints,
                         [&](const Point& p) { out.push_back(p); });
  return out;
}

} // namespace wkrull
