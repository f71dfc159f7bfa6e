#include "wkrull/lattice.hpp"

#include "wkrull/errors.hpp"
#include "wkrull/point.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_set>

namespace wkrull {

bool Cone::contains(const IntVector& x) const {
  for (const auto& f : facets)
    if (sgn(dot(f, x)) < 0) return false;
  for (const auto& e : equations)
    if (sgn(dot(e, x)) != 0) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Smith normal form

namespace {

struct SnfWork {
  std::vector<std::vector<Integer>> d;
  IntMatrix left, right;
  std::size_t r, c;

  void row_addmul(std::size_t dst, std::size_t src, const Integer& k) {
    for (std::size_t j = 0; j < c; ++j) d[dst][j] += k * d[src][j];
    for (std::size_t j = 0; j < r; ++j) left(dst, j) += k * left(src, j);
  }
  void col_addmul(std::size_t dst, std::size_t src, const Integer& k) {
    for (std::size_t i = 0; i < r; ++i) d[i][dst] += k * d[i][src];
    for (std::size_t i = 0; i < c; ++i) right(i, dst) += k * right(i, src);
  }
  void row_swap(std::size_t a, std::size_t b) {
    if (a == b) return;
    std::swap(d[a], d[b]);
    left.swap_rows(a, b);
  }
  void col_swap(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (auto& row : d) std::swap(row[a], row[b]);
    right.swap_cols(a, b);
  }
  void row_negate(std::size_t a) {
    for (auto& x : d[a]) x = -x;
    for (std::size_t j = 0; j < r; ++j) left(a, j) = -left(a, j);
  }
};

} // namespace

SmithForm smith_normal_form(const IntMatrix& m) {
  SnfWork w;
  w.r = m.rows();
  w.c = m.cols();
  w.d.assign(w.r, std::vector<Integer>(w.c));
  for (std::size_t i = 0; i < w.r; ++i)
    for (std::size_t j = 0; j < w.c; ++j) w.d[i][j] = m(i, j);
  w.left = IntMatrix::identity(w.r);
  w.right = IntMatrix::identity(w.c);

  std::size_t n = std::min(w.r, w.c);
  for (std::size_t t = 0; t < n; ++t) {
    while (true) {
      // Smallest nonzero entry of the trailing block becomes the pivot.
      std::size_t pi = w.r, pj = w.c;
      for (std::size_t i = t; i < w.r; ++i)
        for (std::size_t j = t; j < w.c; ++j)
          if (sgn(w.d[i][j]) != 0 &&
              (pi == w.r || mpz_cmpabs(w.d[i][j].get_mpz_t(), w.d[pi][pj].get_mpz_t()) < 0)) {
            pi = i;
            pj = j;
          }
      if (pi == w.r) break;
      w.row_swap(t, pi);
      w.col_swap(t, pj);

      bool clean = true;
      for (std::size_t i = t + 1; i < w.r; ++i) {
        if (sgn(w.d[i][t]) == 0) continue;
        Integer q;
        mpz_tdiv_q(q.get_mpz_t(), w.d[i][t].get_mpz_t(), w.d[t][t].get_mpz_t());
        w.row_addmul(i, t, -q);
        if (sgn(w.d[i][t]) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < w.c; ++j) {
        if (sgn(w.d[t][j]) == 0) continue;
        Integer q;
        mpz_tdiv_q(q.get_mpz_t(), w.d[t][j].get_mpz_t(), w.d[t][t].get_mpz_t());
        w.col_addmul(j, t, -q);
        if (sgn(w.d[t][j]) != 0) clean = false;
      }
      if (!clean) continue;

      bool divides = true;
      for (std::size_t i = t + 1; i < w.r && divides; ++i)
        for (std::size_t j = t + 1; j < w.c; ++j)
          if (!mpz_divisible_p(w.d[i][j].get_mpz_t(), w.d[t][t].get_mpz_t())) {
            w.row_addmul(t, i, 1);
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (sgn(w.d[t][t]) < 0) w.row_negate(t);
  }

  SmithForm out;
  out.diagonal = IntMatrix(w.r, w.c);
  for (std::size_t i = 0; i < w.r; ++i)
    for (std::size_t j = 0; j < w.c; ++j) out.diagonal(i, j) = w.d[i][j];
  out.left = std::move(w.left);
  out.right = std::move(w.right);
  return out;
}

std::vector<Integer> invariant_factors(const IntMatrix& m) {
  SmithForm s = smith_normal_form(m);
  std::vector<Integer> out;
  for (std::size_t i = 0; i < std::min(m.rows(), m.cols()); ++i)
    if (sgn(s.diagonal(i, i)) != 0) out.push_back(s.diagonal(i, i));
  return out;
}

// ---------------------------------------------------------------------------
// Hermite basis and orthogonal complements

IntMatrix lattice_basis(const std::vector<IntVector>& gens, std::size_t dim) {
  std::vector<IntVector> rows;
  for (const auto& g : gens) {
    if (g.size() != dim) throw DimensionMismatch("generator length differs from dimension");
    if (!g.is_zero()) rows.push_back(g);
  }
  std::size_t top = 0;
  for (std::size_t col = 0; col < dim && top < rows.size(); ++col) {
    // Euclid on column col among rows top..end.
    while (true) {
      std::size_t p = rows.size();
      for (std::size_t i = top; i < rows.size(); ++i)
        if (sgn(rows[i][col]) != 0 &&
            (p == rows.size() || mpz_cmpabs(rows[i][col].get_mpz_t(), rows[p][col].get_mpz_t()) < 0))
          p = i;
      if (p == rows.size()) break;
      std::swap(rows[top], rows[p]);
      bool done = true;
      for (std::size_t i = top + 1; i < rows.size(); ++i) {
        if (sgn(rows[i][col]) == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), rows[i][col].get_mpz_t(), rows[top][col].get_mpz_t());
        rows[i] -= q * rows[top];
        if (sgn(rows[i][col]) != 0) done = false;
      }
      if (done) break;
    }
    if (sgn(rows[top][col]) == 0) continue;
    if (sgn(rows[top][col]) < 0) rows[top] = -rows[top];
    for (std::size_t i = 0; i < top; ++i) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), rows[i][col].get_mpz_t(), rows[top][col].get_mpz_t());
      rows[i] -= q * rows[top];
    }
    ++top;
  }
  rows.resize(top);
  IntMatrix out(rows.size(), dim);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < dim; ++j) out(i, j) = rows[i][j];
  return out;
}

std::vector<IntVector> orthogonal_complement(const std::vector<IntVector>& gens,
                                             std::size_t dim) {
  std::vector<std::vector<Rational>> m;
  for (const auto& g : gens) {
    if (g.size() != dim) throw DimensionMismatch("generator length differs from dimension");
    std::vector<Rational> row(dim);
    for (std::size_t j = 0; j < dim; ++j) row[j] = g[j];
    m.push_back(std::move(row));
  }
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < dim && r < m.size(); ++c) {
    std::size_t p = r;
    while (p < m.size() && sgn(m[p][c]) == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[r], m[p]);
    Rational inv = 1 / m[r][c];
    for (auto& x : m[r]) x *= inv;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || sgn(m[i][c]) == 0) continue;
      Rational f = m[i][c];
      for (std::size_t j = 0; j < dim; ++j) m[i][j] -= f * m[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  std::vector<IntVector> out;
  for (std::size_t f = 0; f < dim; ++f) {
    if (std::find(pivots.begin(), pivots.end(), f) != pivots.end()) continue;
    std::vector<Rational> y(dim);
    y[f] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) y[pivots[i]] = -m[i][f];
    Integer den = 1;
    for (const auto& q : y) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.get_den_mpz_t());
    IntVector v(dim);
    for (std::size_t j = 0; j < dim; ++j) {
      Rational s = y[j] * den;
      v[j] = s.get_num();
    }
    out.push_back(primitive(v));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Cones

namespace {

// Generalized cross product: the vector n with n . x = det(rows; x).
IntVector cross_normal(const std::vector<IntVector>& rows, std::size_t dim) {
  IntVector n(dim);
  for (std::size_t j = 0; j < dim; ++j) {
    IntMatrix minor(rows.size(), dim - 1);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      std::size_t cc = 0;
      for (std::size_t k = 0; k < dim; ++k)
        if (k != j) minor(i, cc++) = rows[i][k];
    }
    Integer det = minor.determinant();
    n[j] = ((rows.size() + j) % 2 == 0) ? det : Integer(-det);
  }
  return n;
}

template <class F>
void for_each_subset(std::size_t n, std::size_t k, F&& f) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    f(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

std::size_t rank_of(const std::vector<IntVector>& vs) {
  return vs.empty() ? 0 : IntMatrix(vs).rank();
}

} // namespace

Cone cone_of(const std::vector<IntVector>& gens) {
  if (gens.empty()) throw PreconditionViolated("cone_of needs at least one generator");
  std::size_t d = gens.front().size();
  for (const auto& g : gens)
    if (g.size() != d) throw DimensionMismatch("generators of different lengths");
  if (d > kMaxDim)
    throw UnsupportedDimension("facet enumeration supports dimension <= 4");

  std::set<IntVector> dirs;
  for (const auto& g : gens)
    if (!g.is_zero()) dirs.insert(primitive(g));
  std::vector<IntVector> prim(dirs.begin(), dirs.end());

  Cone c;
  c.ambient_dim = d;
  c.equations = orthogonal_complement(prim, d);
  c.dimension = d - c.equations.size();
  if (c.dimension == 0) return c;

  std::set<IntVector> facets;
  for_each_subset(prim.size(), c.dimension - 1, [&](const std::vector<std::size_t>& idx) {
    std::vector<IntVector> rows = c.equations;
    for (auto i : idx) rows.push_back(prim[i]);
    IntVector n = cross_normal(rows, d);
    if (n.is_zero()) return;
    bool pos = false, neg = false;
    for (const auto& g : prim) {
      int s = sgn(dot(n, g));
      if (s > 0) pos = true;
      if (s < 0) neg = true;
    }
    if (pos && neg) return;
    if (neg) n = -n;
    facets.insert(primitive(n));
  });
  c.facets.assign(facets.begin(), facets.end());

  for (const auto& g : prim) {
    bool all_zero = true;
    for (const auto& f : c.facets)
      if (sgn(dot(f, g)) != 0) {
        all_zero = false;
        break;
      }
    if (all_zero) c.pointed = false;
  }
  if (!c.pointed) {
    c.rays = prim;
    return c;
  }
  for (const auto& g : prim) {
    std::vector<IntVector> tight = c.equations;
    for (const auto& f : c.facets)
      if (sgn(dot(f, g)) == 0) tight.push_back(f);
    if (rank_of(tight) + 1 == d) c.rays.push_back(g);
  }
  return c;
}

std::vector<Face> face_lattice(const Cone& c, const std::vector<IntVector>& gens) {
  auto zero_set = [&](const std::vector<std::size_t>& support) {
    std::vector<std::size_t> fs;
    for (std::size_t j = 0; j < c.facets.size(); ++j) {
      bool all = true;
      for (auto i : support)
        if (sgn(dot(c.facets[j], gens[i])) != 0) {
          all = false;
          break;
        }
      if (all) fs.push_back(j);
    }
    return fs;
  };
  auto make_face = [&](std::vector<std::size_t> support) {
    Face f;
    f.facets = zero_set(support);
    std::vector<IntVector> vs;
    for (auto i : support) vs.push_back(gens[i]);
    f.dimension = rank_of(vs);
    f.support = std::move(support);
    return f;
  };

  std::vector<std::size_t> all(gens.size());
  for (std::size_t i = 0; i < gens.size(); ++i) all[i] = i;
  std::map<std::vector<std::size_t>, Face> seen;
  std::vector<std::vector<std::size_t>> queue{all};
  seen.emplace(all, make_face(all));
  for (std::size_t q = 0; q < queue.size(); ++q) {
    Face cur = seen.at(queue[q]);
    for (std::size_t j = 0; j < c.facets.size(); ++j) {
      if (std::find(cur.facets.begin(), cur.facets.end(), j) != cur.facets.end()) continue;
      std::vector<std::size_t> sub;
      for (auto i : cur.support)
        if (sgn(dot(c.facets[j], gens[i])) == 0) sub.push_back(i);
      if (seen.count(sub)) continue;
      seen.emplace(sub, make_face(sub));
      queue.push_back(sub);
    }
  }
  std::vector<Face> out;
  for (auto& [k, f] : seen) out.push_back(f);
  std::sort(out.begin(), out.end(), [](const Face& a, const Face& b) {
    if (a.dimension != b.dimension) return a.dimension > b.dimension;
    return a.support < b.support;
  });
  return out;
}

// ---------------------------------------------------------------------------
// Gradings

IntVector positive_grading(const std::vector<IntVector>& gens) {
  if (gens.empty()) throw PreconditionViolated("positive_grading needs generators");
  for (const auto& g : gens)
    if (g.is_zero()) throw PreconditionViolated("positive_grading: zero generator");
  Cone c = cone_of(gens);
  std::size_t d = c.ambient_dim;
  if (!c.pointed || c.facets.empty())
    throw NotPositive("the generated cone contains a line");
  IntVector sum(d);
  for (const auto& f : c.facets) sum += f;
  sum = primitive(sum);
  for (const auto& g : gens)
    if (sgn(dot(sum, g)) <= 0) throw NotPositive("the generated cone contains a line");

  Integer l1 = 0;
  for (const auto& x : sum) l1 += abs(x);
  if (l1 > 30) return sum;
  long limit = l1.get_si();

  std::vector<Point> pg;
  for (const auto& g : gens) pg.push_back(to_point(g));
  // Vectors of a fixed L1 norm, in lexicographic order.
  for (long norm = 1; norm <= limit; ++norm) {
    Point x;
    std::optional<Point> found;
    auto rec = [&](auto&& self, std::size_t i, long left) -> bool {
      if (i + 1 == d) {
        std::vector<long> last{-left};
        if (left != 0) last.push_back(left);
        for (long v : last) {
          x[i] = v;
          bool ok = std::all_of(pg.begin(), pg.end(),
                                [&](const Point& g) { return dot(x, g) > 0; });
          if (ok) {
            found = x;
            return true;
          }
        }
        return false;
      }
      for (long v = -left; v <= left; ++v) {
        x[i] = v;
        if (self(self, i + 1, left - std::labs(v))) return true;
      }
      return false;
    };
    if (rec(rec, 0, norm)) {
      IntVector out = to_int_vector(*found, d);
      return primitive(out);
    }
  }
  return sum;
}

// ---------------------------------------------------------------------------
// Hilbert bases

std::vector<IntVector> hilbert_basis(const Cone& c, const IntMatrix& basis) {
  if (!c.pointed) throw NotPointed("Hilbert basis of a cone containing a line");
  std::size_t d = c.ambient_dim;
  std::size_t k = basis.rows();
  if (basis.cols() != d) throw DimensionMismatch("lattice basis width");
  if (c.rays.empty()) return {};

  // Rays in lattice coordinates.
  IntMatrix bt = basis.transpose();
  std::vector<IntVector> yr;
  for (const auto& r : c.rays) {
    std::vector<Rational> y;
    if (!solve_rational(bt, r, y))
      throw PreconditionViolated("cone is not contained in the lattice span");
    Integer den = 1;
    for (const auto& q : y) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.get_den_mpz_t());
    IntVector v(k);
    for (std::size_t j = 0; j < k; ++j) v[j] = Rational(y[j] * den).get_num();
    yr.push_back(primitive(v));
  }
  Cone lc = cone_of(yr);
  IntVector grading = positive_grading(yr);
  std::vector<Integer> degs;
  for (const auto& y : yr) degs.push_back(dot(grading, y));
  std::sort(degs.rbegin(), degs.rend());
  Integer bound = 0;
  for (std::size_t i = 0; i < std::min(degs.size(), lc.dimension); ++i) bound += degs[i];

  std::vector<Halfspace> hs;
  for (const auto& f : lc.facets) hs.push_back({to_point(f), 0});
  for (const auto& e : lc.equations) {
    hs.push_back({to_point(e), 0});
    hs.push_back({-to_point(e), 0});
  }
  Point pgr = to_point(grading);
  hs.push_back({-pgr, -to_small(bound)});

  std::vector<Point> pts = lattice_points(k, hs);
  std::sort(pts.begin(), pts.end(), [&](const Point& a, const Point& b) {
    auto da = dot(pgr, a), db = dot(pgr, b);
    if (da != db) return da < db;
    return a < b;
  });
  auto in_cone = [&](const Point& x) {
    for (const auto& h : hs)
      if (h.offset == 0 && !h.contains(x)) return false;
    return true;
  };
  std::vector<Point> hb;
  for (const auto& x : pts) {
    if (x.is_zero()) continue;
    bool reducible = false;
    for (const auto& h : hb)
      if (in_cone(x - h)) {
        reducible = true;
        break;
      }
    if (!reducible) hb.push_back(x);
  }
  std::vector<IntVector> out;
  for (const auto& x : hb) out.push_back(bt * to_int_vector(x, k));
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Membership

std::optional<std::vector<Integer>> solve_membership(
    const IntVector& target, const std::vector<IntVector>& gens,
    const IntVector& grading) {
  std::size_t n = gens.size();
  std::size_t d = target.size();
  Point t = to_point(target), lam = to_point(grading);
  std::vector<Point> g;
  std::vector<std::int64_t> deg;
  for (const auto& x : gens) {
    if (x.size() != d) throw DimensionMismatch("generator length differs from target");
    g.push_back(to_point(x));
    deg.push_back(dot(lam, g.back()));
    if (deg.back() <= 0)
      throw PreconditionViolated("grading must be strictly positive on generators");
  }
  if (dot(lam, t) < 0) return std::nullopt;
  if (n == 0) {
    if (t.is_zero()) return std::vector<Integer>{};
    return std::nullopt;
  }

  struct Key {
    std::size_t i;
    Point p;
    bool operator==(const Key& o) const { return i == o.i && p == o.p; }
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept {
      return PointHash{}(k.p) * 31 + k.i;
    }
  };
  std::unordered_set<Key, KeyHash> dead;
  std::vector<std::int64_t> mult(n, 0);

  auto rec = [&](auto&& self, std::size_t i, const Point& res) -> bool {
    std::int64_t r = dot(lam, res);
    if (r == 0) return res.is_zero();
    if (i == n) return false;
    Key key{i, res};
    if (dead.count(key)) return false;
    for (std::int64_t m = 0; m * deg[i] <= r; ++m) {
      mult[i] = m;
      if (self(self, i + 1, res - m * g[i])) return true;
    }
    mult[i] = 0;
    dead.insert(key);
    return false;
  };
  if (!rec(rec, 0, t)) return std::nullopt;
  std::vector<Integer> out;
  for (auto m : mult) out.emplace_back(static_cast<long>(m));
  return out;
}

} // namespace wkrull
