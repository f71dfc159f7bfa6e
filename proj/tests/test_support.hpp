#pragma once

#include "wkrull/integer.hpp"

#include <random>
#include <set>
#include <vector>

namespace wkrull::testing {

inline std::vector<IntVector> random_gens(std::mt19937_64& rng, std::size_t d,
                                          std::size_t n, long lo, long hi) {
  std::uniform_int_distribution<long> dist(lo, hi);
  std::vector<IntVector> out;
  while (out.size() < n) {
    IntVector v(d);
    for (std::size_t i = 0; i < d; ++i) v[i] = dist(rng);
    if (!v.is_zero()) out.push_back(v);
  }
  return out;
}

// All sums of generators up to a degree, by breadth-first closure.
inline std::set<IntVector> naive_monoid(const std::vector<IntVector>& gens,
                                        const IntVector& grading, long max_deg) {
  std::set<IntVector> seen{IntVector(grading.size())};
  std::vector<IntVector> frontier{IntVector(grading.size())};
  while (!frontier.empty()) {
    std::vector<IntVector> next;
    for (const auto& x : frontier)
      for (const auto& g : gens) {
        IntVector y = x + g;
        if (dot(grading, y) > max_deg) continue;
        if (seen.insert(y).second) next.push_back(y);
      }
    frontier = std::move(next);
  }
  return seen;
}

inline IntVector ones(std::size_t d) {
  IntVector v(d);
  for (std::size_t i = 0; i < d; ++i) v[i] = 1;
  return v;
}

// Integer points x with |x_i| <= r, in lexicographic order.
inline std::vector<IntVector> cube(std::size_t d, long r) {
  std::vector<IntVector> out;
  IntVector x(d);
  for (std::size_t i = 0; i < d; ++i) x[i] = -r;
  while (true) {
    out.push_back(x);
    std::size_t i = d;
    while (i > 0 && x[i - 1] == r) x[--i] = -r;
    if (i == 0) break;
    x[i - 1] += 1;
  }
  return out;
}

} // namespace wkrull::testing
