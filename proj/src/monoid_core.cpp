#include "monoid_internal.hpp"

#include "wkrull/errors.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>

namespace wkrull {
namespace detail {

namespace {

// Table growth stops once this many elements are stored; membership beyond
// the table falls back to the conductor and a memoized descent.
constexpr std::size_t kTableCap = 600000;
// The conductor search gives up when the table would exceed this size.
constexpr std::size_t kConductorCap = 3000000;
// Lattice points visited by one dual computation.
constexpr std::size_t kDualBudget = 400000;

std::int64_t mod_floor(std::int64_t a, std::int64_t b) {
  std::int64_t r = a % b;
  return r < 0 ? r + b : r;
}

} // namespace

Point to_point_checked(const IntVector& v, std::size_t m) {
  if (v.size() != m) throw DimensionMismatch("vector length differs from the reduced rank");
  return to_point(v);
}

std::vector<Point> sort_by_degree(std::vector<Point> v, const Point& grading) {
  std::sort(v.begin(), v.end(), [&](const Point& a, const Point& b) {
    auto da = dot(grading, a), db = dot(grading, b);
    if (da != db) return da < db;
    return a < b;
  });
  return v;
}

bool MonoidData::in_cone(const Point& x) const {
  for (const auto& f : rfacets)
    if (dot(f, x) < 0) return false;
  return true;
}

bool MonoidData::contains(const Point& x) const {
  if (m == 0) return x.is_zero();
  std::int64_t dx = deg(x);
  if (dx < 0) return false;
  if (dx == 0) return x.is_zero();
  if (!in_cone(x)) return false;
  if (dx <= table_degree) return table.count(x) > 0;
  if (in_cone(x - conductor)) return true;
  std::lock_guard lock(cache_mutex);
  auto& memo = beyond_table;
  auto rec = [&](auto&& self, const Point& y) -> bool {
    std::int64_t dy = deg(y);
    if (dy <= table_degree) return table.count(y) > 0;
    if (in_cone(y - conductor)) return true;
    auto it = memo.find(y);
    if (it != memo.end()) return it->second;
    bool found = false;
    for (const auto& g : rgens) {
      Point z = y - g;
      if (in_cone(z) && self(self, z)) {
        found = true;
        break;
      }
    }
    memo.emplace(y, found);
    return found;
  };
  return rec(rec, x);
}

std::vector<Point> MonoidData::cone_points_upto(std::int64_t degree) const {
  if (m == 0) return {Point{}};
  if (degree < 0) return {};
  std::vector<Halfspace> hs;
  for (const auto& f : rfacets) hs.push_back({f, 0});
  hs.push_back({-grading, -degree});
  return sort_by_degree(lattice_points(m, hs), grading);
}

std::vector<Point> MonoidData::elements_upto(std::int64_t degree) const {
  if (m == 0) return {Point{}};
  std::vector<Point> out;
  if (degree <= table_degree) {
    for (std::int64_t k = 0; k <= degree && k < static_cast<std::int64_t>(layers.size()); ++k)
      out.insert(out.end(), layers[k].begin(), layers[k].end());
    return out;
  }
  for (const auto& x : cone_points_upto(degree))
    if (contains(x)) out.push_back(x);
  return out;
}

std::optional<Point> MonoidData::reduce(const IntVector& x) const {
  if (x.size() != d) throw DimensionMismatch("vector length differs from the ambient dimension");
  IntVector r = x;
  IntVector y(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t p = pivots[i];
    if (!mpz_divisible_p(r[p].get_mpz_t(), basis(i, p).get_mpz_t())) return std::nullopt;
    Integer q;
    mpz_divexact(q.get_mpz_t(), r[p].get_mpz_t(), basis(i, p).get_mpz_t());
    y[i] = q;
    r -= q * basis.row(i);
  }
  if (!r.is_zero()) return std::nullopt;
  return to_point(to_red * y);
}

Point MonoidData::reduce_checked(const IntVector& x) const {
  auto z = reduce(x);
  if (!z) throw NotInQuotientGroup(x.str() + " is not in the quotient group");
  return *z;
}

IntVector MonoidData::lift(const Point& z) const {
  IntVector y = from_red * to_int_vector(z, m);
  IntVector x(d);
  for (std::size_t i = 0; i < n; ++i) x += y[i] * basis.row(i);
  return x;
}

Point MonoidData::face_class(const FaceData& f, const Point& x) const {
  Point c;
  for (std::size_t j = 0; j < m; ++j) {
    std::int64_t w = dot(x, f.right_cols[j]);
    c[j] = j < f.lat_rank ? mod_floor(w, f.diag[j]) : w;
  }
  return c;
}

bool MonoidData::localizes(std::size_t face, const Point& x) const {
  const FaceData& f = facedata[face];
  if (m == 0) return true;
  if (dot(f.psi, x) < 0) return false;
  if (f.on.empty()) return contains(x);
  return class_reachable(face, x);
}

bool MonoidData::class_reachable(std::size_t face, const Point& x) const {
  const FaceData& f = facedata[face];
  // Modulo the face lattice the face generators vanish, so x lies in
  // R + gp(F) iff its class is a sum of classes of off-face generators. The
  // class determines psi(x), which bounds the search.
  std::lock_guard lock(cache_mutex);
  auto& memo = loc_memo[face];
  auto reach = [&](auto&& self, const Point& r) -> bool {
    Point cls = face_class(f, r);
    if (dot(f.psi, r) == 0) return cls.is_zero();
    auto it = memo.find(cls);
    if (it != memo.end()) return it->second;
    bool ok = false;
    for (auto i : f.off) {
      Point z = r - rgens[i];
      if (dot(f.psi, z) >= 0 && self(self, z)) {
        ok = true;
        break;
      }
    }
    memo.emplace(cls, ok);
    return ok;
  };
  return reach(reach, x);
}

std::optional<Point> MonoidData::localize(std::size_t face, const Point& x) const {
  const FaceData& f = facedata[face];
  if (m == 0) return Point{};
  if (dot(f.psi, x) < 0) return std::nullopt;
  if (f.on.empty()) {
    if (contains(x)) return Point{};
    return std::nullopt;
  }
  if (!class_reachable(face, x)) return std::nullopt;
  std::vector<std::int64_t> mult(f.off.size(), 0);
  for (Point r = x; dot(f.psi, r) > 0;) {
    for (std::size_t i = 0; i < f.off.size(); ++i) {
      Point z = r - rgens[f.off[i]];
      if (dot(f.psi, z) >= 0 && class_reachable(face, z)) {
        ++mult[i];
        r = z;
        break;
      }
    }
  }

  // Residual lies in the face lattice; write it over the face generators and
  // collect the negative part.
  Point lam = x;
  for (std::size_t i = 0; i < f.off.size(); ++i) lam = lam - mult[i] * rgens[f.off[i]];
  std::vector<Integer> coeff(f.on.size(), 0);
  for (std::size_t j = 0; j < f.lat_rank; ++j) {
    Integer yj = static_cast<long>(dot(lam, f.right_cols[j]) / f.diag[j]);
    for (std::size_t i = 0; i < f.on.size(); ++i) coeff[i] += yj * f.left(j, i);
  }
  Point cert;
  for (std::size_t i = 0; i < f.on.size(); ++i)
    if (sgn(coeff[i]) < 0) cert = cert + to_small(-coeff[i]) * rgens[f.on[i]];
  return cert;
}

std::int64_t MonoidData::default_dual_bound(const std::vector<Point>& ideal) const {
  std::int64_t top = 0;
  for (const auto& x : ideal) top = std::max(top, deg(x));
  return cdeg + 2 * maxdeg + top;
}

std::vector<Point> MonoidData::dual(const std::vector<Point>& ideal, std::int64_t bound,
                                    std::vector<Point>* all_found) const {
  if (ideal.empty()) throw PreconditionViolated("dual of an empty ideal");
  if (m == 0) {
    if (all_found) *all_found = {Point{}};
    return {Point{}};
  }
  std::vector<Halfspace> hs;
  for (const auto& f : rfacets) {
    std::int64_t lo = std::numeric_limits<std::int64_t>::min();
    for (const auto& x : ideal) lo = std::max(lo, -dot(f, x));
    hs.push_back({f, lo});
  }
  hs.push_back({-grading, -bound});
  std::vector<Point> found;
  PointSet set;
  std::size_t visited = 0;
  for_each_lattice_point(m, hs, [&](const Point& g) {
    if (++visited > kDualBudget)
      throw BoundExceeded("dual search box exceeds " + std::to_string(kDualBudget) + " points",
                          bound);
    for (const auto& x : ideal)
      if (!contains(g + x)) return;
    found.push_back(g);
    set.insert(g);
  });
  std::vector<Point> gens;
  for (const auto& g : found) {
    bool minimal = true;
    for (const auto& r : rgens)
      if (set.count(g - r)) {
        minimal = false;
        break;
      }
    if (minimal) gens.push_back(g);
  }
  std::sort(gens.begin(), gens.end());
  if (all_found) *all_found = sort_by_degree(found, grading);
  for (const auto& g : gens)
    if (deg(g) > bound - maxdeg)
      throw BoundExceeded("dual generator " + lift(g).str() + " in the guard band", bound);
  return gens;
}

std::vector<Point> MonoidData::prime_gens(std::size_t face) const {
  std::vector<Point> out;
  for (auto i : facedata[face].off) out.push_back(rgens[i]);
  return out;
}

namespace {

std::vector<std::size_t> pivot_columns(const IntMatrix& b) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < b.rows(); ++i) {
    std::size_t j = 0;
    while (sgn(b(i, j)) == 0) ++j;
    out.push_back(j);
  }
  return out;
}

IntMatrix inverse_unimodular(const IntMatrix& a) {
  std::size_t n = a.rows();
  IntMatrix inv(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    IntVector e(n);
    e[j] = 1;
    std::vector<Rational> x;
    solve_rational(a, e, x);
    for (std::size_t i = 0; i < n; ++i) inv(i, j) = x[i].get_num();
  }
  return inv;
}

void build_table_to(MonoidData& md, std::int64_t degree) {
  while (static_cast<std::int64_t>(md.layers.size()) <= degree) {
    std::int64_t k = md.layers.size();
    std::vector<Point> layer;
    if (k == 0) {
      layer.push_back(Point{});
    } else {
      for (std::size_t i = 0; i < md.rgens.size(); ++i) {
        std::int64_t prev = k - md.rdeg[i];
        if (prev < 0) continue;
        for (const auto& y : md.layers[prev]) {
          Point z = y + md.rgens[i];
          if (md.table.insert(z).second) layer.push_back(z);
        }
      }
      std::sort(layer.begin(), layer.end());
    }
    if (k == 0) md.table.insert(Point{});
    md.layers.push_back(std::move(layer));
  }
  md.table_degree = static_cast<std::int64_t>(md.layers.size()) - 1;
}

void compute_face_data(MonoidData& md) {
  std::size_t m = md.m;
  for (const auto& face : md.faces) {
    FaceData fd;
    std::set<std::size_t> on;
    for (auto i : face.support)
      if (md.gen_to_red[i] >= 0) on.insert(static_cast<std::size_t>(md.gen_to_red[i]));
    fd.on.assign(on.begin(), on.end());
    for (std::size_t i = 0; i < md.rgens.size(); ++i)
      if (!on.count(i)) fd.off.push_back(i);
    fd.facets = face.facets;
    for (auto j : face.facets) fd.psi = fd.psi + md.rfacets[j];
    if (!fd.on.empty()) {
      IntMatrix a(fd.on.size(), m);
      for (std::size_t r = 0; r < fd.on.size(); ++r)
        for (std::size_t c = 0; c < m; ++c) a(r, c) = static_cast<long>(md.rgens[fd.on[r]][c]);
      SmithForm s = smith_normal_form(a);
      for (std::size_t j = 0; j < std::min(a.rows(), m); ++j)
        if (sgn(s.diagonal(j, j)) != 0) {
          fd.diag[j] = to_small(s.diagonal(j, j));
          fd.lat_rank = j + 1;
        }
      for (std::size_t j = 0; j < m; ++j) {
        Point col;
        for (std::size_t i = 0; i < m; ++i) col[i] = to_small(s.right(i, j));
        fd.right_cols[j] = col;
      }
      fd.left = s.left;
    } else {
      for (std::size_t j = 0; j < m; ++j) {
        Point col;
        col[j] = 1;
        fd.right_cols[j] = col;
      }
    }
    fd.height = 0;
    md.facedata.push_back(std::move(fd));
    md.loc_memo.emplace_back();
  }
  // Longest chains, top face first in the sorted face list.
  for (std::size_t k = 0; k < md.faces.size(); ++k) {
    std::size_t h = 0;
    for (std::size_t j = 0; j < k; ++j) {
      const auto& big = md.faces[j].support;
      const auto& small = md.faces[k].support;
      if (big.size() > small.size() &&
          std::includes(big.begin(), big.end(), small.begin(), small.end()))
        h = std::max(h, md.facedata[j].height + 1);
    }
    md.facedata[k].height = h;
  }
}

} // namespace

} // namespace detail

using detail::MonoidData;

AffineMonoid AffineMonoid::build(std::size_t ambient_dim, std::vector<IntVector> generators) {
  if (ambient_dim == 0) throw DimensionMismatch("ambient dimension must be positive");
  for (const auto& g : generators)
    if (g.size() != ambient_dim)
      throw DimensionMismatch("generator " + g.str() + " does not have length " +
                              std::to_string(ambient_dim));
  if (ambient_dim > kMaxDim)
    throw UnsupportedDimension("ambient dimension " + std::to_string(ambient_dim) +
                               " exceeds the supported maximum of 4");

  auto md = std::make_shared<MonoidData>();
  md->d = ambient_dim;
  std::size_t zeros = 0;
  std::set<IntVector> uniq;
  for (auto& g : generators) {
    if (g.is_zero()) {
      ++zeros;
      continue;
    }
    to_point(g);  // range check
    uniq.insert(g);
  }
  std::size_t dups = generators.size() - zeros - uniq.size();
  if (zeros) md->warnings.push_back("dropped " + std::to_string(zeros) + " zero generator(s)");
  if (dups) md->warnings.push_back("removed " + std::to_string(dups) + " duplicate generator(s)");
  md->gens.assign(uniq.begin(), uniq.end());

  const auto& gens = md->gens;
  std::size_t d = ambient_dim;
  md->basis = wkrull::lattice_basis(gens, d);
  md->n = md->basis.rows();
  md->pivots = detail::pivot_columns(md->basis);

  if (gens.empty()) {
    md->cone.ambient_dim = d;
    md->cone.equations = orthogonal_complement({}, d);
    md->faces = {Face{}};
    md->to_red = IntMatrix(0, 0);
    md->from_red = IntMatrix(0, 0);
    md->unit_basis = IntMatrix(0, d);
    md->gen_to_red = {};
    detail::compute_face_data(*md);
    detail::build_table_to(*md, 0);
    return AffineMonoid(md);
  }

  md->cone = cone_of(gens);
  md->faces = face_lattice(md->cone, gens);
  const Face& minimal = md->faces.back();
  md->u = minimal.dimension;
  std::size_t n = md->n;

  // Coordinates over the lattice basis.
  auto coords = [&](const IntVector& x) {
    IntVector r = x, y(n);
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t p = md->pivots[i];
      Integer q = r[p] / md->basis(i, p);
      y[i] = q;
      r -= q * md->basis.row(i);
    }
    return y;
  };

  if (md->u > 0) {
    std::vector<IntVector> units;
    for (auto i : minimal.support) units.push_back(coords(gens[i]));
    SmithForm s = smith_normal_form(IntMatrix(units));
    for (std::size_t j = 0; j < std::min(units.size(), n); ++j)
      if (sgn(s.diagonal(j, j)) != 0 && s.diagonal(j, j) != 1)
        throw UnsupportedUnits("the unit group has torsion in the quotient group "
                               "(invariant factor " + s.diagonal(j, j).get_str() + ")");
    IntMatrix rt = s.right.transpose();
    IntMatrix rt_inv = detail::inverse_unimodular(rt);
    md->m = n - md->u;
    md->to_red = IntMatrix(md->m, n);
    md->from_red = IntMatrix(n, md->m);
    for (std::size_t i = 0; i < md->m; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        md->to_red(i, j) = rt(md->u + i, j);
        md->from_red(j, i) = rt_inv(j, md->u + i);
      }
    md->unit_basis = IntMatrix(md->u, d);
    for (std::size_t k = 0; k < md->u; ++k) {
      IntVector x(d);
      for (std::size_t i = 0; i < n; ++i) x += rt_inv(i, k) * md->basis.row(i);
      for (std::size_t j = 0; j < d; ++j) md->unit_basis(k, j) = x[j];
    }
  } else {
    md->m = n;
    md->to_red = IntMatrix::identity(n);
    md->from_red = IntMatrix::identity(n);
    md->unit_basis = IntMatrix(0, d);
  }
  std::size_t m = md->m;

  // Reduced generators.
  std::set<std::size_t> unit_idx(minimal.support.begin(), minimal.support.end());
  std::map<Point, std::size_t> red_first;
  std::vector<Point> image(gens.size());
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (unit_idx.count(i)) continue;
    image[i] = to_point(md->to_red * coords(gens[i]));
    red_first.emplace(image[i], i);
  }
  for (const auto& [p, i] : red_first) {
    md->rgens.push_back(p);
    md->rgen_origin.push_back(i);
  }
  md->gen_to_red.assign(gens.size(), -1);
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (unit_idx.count(i)) continue;
    auto it = std::lower_bound(md->rgens.begin(), md->rgens.end(), image[i]);
    md->gen_to_red[i] = static_cast<int>(it - md->rgens.begin());
  }

  if (m == 0) {
    detail::compute_face_data(*md);
    detail::build_table_to(*md, 0);
    return AffineMonoid(md);
  }

  std::vector<IntVector> rg;
  for (const auto& p : md->rgens) rg.push_back(to_int_vector(p, m));
  Cone rc = cone_of(rg);
  if (!rc.pointed || rc.dimension != m)
    throw Error("internal: reduced cone is not pointed and full-dimensional");

  // Align reduced facets with ambient facets through their zero sets.
  auto zero_set_amb = [&](const IntVector& f) {
    std::vector<std::size_t> z;
    for (std::size_t i = 0; i < gens.size(); ++i)
      if (sgn(dot(f, gens[i])) == 0) z.push_back(i);
    return z;
  };
  auto zero_set_red = [&](const IntVector& f) {
    std::vector<std::size_t> z;
    for (std::size_t i = 0; i < gens.size(); ++i)
      if (md->gen_to_red[i] < 0 || sgn(dot(f, rg[md->gen_to_red[i]])) == 0) z.push_back(i);
    return z;
  };
  if (rc.facets.size() != md->cone.facets.size())
    throw Error("internal: facet count changed under reduction");
  for (const auto& f : md->cone.facets) {
    auto z = zero_set_amb(f);
    bool matched = false;
    for (const auto& g : rc.facets)
      if (zero_set_red(g) == z) {
        md->rfacets.push_back(to_point(g));
        matched = true;
        break;
      }
    if (!matched) throw Error("internal: facet alignment failed");
  }

  md->grading_vec = positive_grading(rg);
  md->grading = to_point(md->grading_vec);
  for (const auto& g : md->rgens) {
    md->rdeg.push_back(md->deg(g));
    md->maxdeg = std::max(md->maxdeg, md->rdeg.back());
  }

  for (const auto& h : hilbert_basis(rc, IntMatrix::identity(m))) md->hilbert.push_back(to_point(h));

  // Module generators of the saturation over R.
  std::vector<std::int64_t> degs = md->rdeg;
  std::sort(degs.rbegin(), degs.rend());
  std::int64_t top = 0;
  for (std::size_t i = 0; i < std::min(m, degs.size()); ++i) top += degs[i];
  for (const auto& x : md->cone_points_upto(top - 1)) {
    bool gen = true;
    for (const auto& g : md->rgens)
      if (md->in_cone(x - g)) {
        gen = false;
        break;
      }
    if (gen) md->modgens.push_back(x);
  }
  std::int64_t mod_top = 0;
  for (const auto& x : md->modgens) mod_top = std::max(mod_top, md->deg(x));

  // Conductor: first element of R in (degree, lex) order absorbing all module
  // generators.
  bool found = false;
  for (std::int64_t t = 0; !found; ++t) {
    detail::build_table_to(*md, t + mod_top);
    if (md->table.size() > detail::kConductorCap)
      throw BoundExceeded("conductor search exhausted its table", t);
    for (const auto& r : md->layers[t]) {
      bool ok = true;
      for (const auto& mu : md->modgens)
        if (!md->table.count(r + mu)) {
          ok = false;
          break;
        }
      if (ok) {
        md->conductor = r;
        md->cdeg = t;
        found = true;
        break;
      }
    }
  }
  std::int64_t want = md->cdeg + 4 * md->maxdeg + mod_top;
  while (md->table_degree < want && md->table.size() < detail::kTableCap)
    detail::build_table_to(*md, md->table_degree + 1);

  for (const auto& h : md->hilbert)
    if (!md->contains(h)) {
      md->normal = false;
      md->normal_witness = h;
      break;
    }

  detail::compute_face_data(*md);
  return AffineMonoid(md);
}

std::size_t AffineMonoid::ambient_dim() const { return data_->d; }
const std::vector<IntVector>& AffineMonoid::generators() const { return data_->gens; }
const IntMatrix& AffineMonoid::lattice_basis() const { return data_->basis; }
std::size_t AffineMonoid::rank() const { return data_->n; }
std::size_t AffineMonoid::unit_rank() const { return data_->u; }
std::size_t AffineMonoid::reduced_rank() const { return data_->m; }
const IntVector& AffineMonoid::grading() const { return data_->grading_vec; }
const Cone& AffineMonoid::cone() const { return data_->cone; }
const std::vector<Face>& AffineMonoid::faces() const { return data_->faces; }
const std::vector<std::string>& AffineMonoid::warnings() const { return data_->warnings; }
std::int64_t AffineMonoid::max_generator_degree() const { return data_->maxdeg; }
bool AffineMonoid::is_normal() const { return data_->normal; }
IntVector AffineMonoid::conductor() const { return data_->lift(data_->conductor); }

std::optional<IntVector> AffineMonoid::to_reduced(const IntVector& x) const {
  auto z = data_->reduce(x);
  if (!z) return std::nullopt;
  return to_int_vector(*z, data_->m);
}

IntVector AffineMonoid::from_reduced(const IntVector& z) const {
  return data_->lift(detail::to_point_checked(z, data_->m));
}

Integer AffineMonoid::degree(const IntVector& x) const {
  return Integer(static_cast<long>(data_->deg(data_->reduce_checked(x))));
}

bool AffineMonoid::contains(const IntVector& x) const {
  return data_->contains(data_->reduce_checked(x));
}

std::optional<MembershipCertificate> membership(const AffineMonoid& s, const IntVector& g) {
  const MonoidData& md = s.data();
  Point z = md.reduce_checked(g);
  if (!md.contains(z)) return std::nullopt;
  MembershipCertificate cert;
  cert.multiplicities.assign(md.gens.size(), 0);
  IntVector rest = g;
  if (md.m > 0 && !z.is_zero()) {
    std::vector<IntVector> rg;
    for (const auto& p : md.rgens) rg.push_back(to_int_vector(p, md.m));
    auto mult = solve_membership(to_int_vector(z, md.m), rg, md.grading_vec);
    if (!mult) throw Error("internal: table and knapsack membership disagree");
    for (std::size_t i = 0; i < rg.size(); ++i) {
      cert.multiplicities[md.rgen_origin[i]] = (*mult)[i];
      rest -= (*mult)[i] * md.gens[md.rgen_origin[i]];
    }
  }
  cert.unit_part = rest;
  return cert;
}

} // namespace wkrull
