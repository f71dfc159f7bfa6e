#include "monoid_internal.hpp"

#include "wkrull/errors.hpp"

#include <algorithm>
#include <set>

namespace wkrull {

using detail::MonoidData;
using detail::PointSet;

std::string to_string(Tri t) {
  switch (t) {
  case Tri::True:
    return "true";
  case Tri::False:
    return "false";
  default:
    return "unsupported";
  }
}

AffineMonoid root_closure(const AffineMonoid& s) {
  const MonoidData& md = s.data();
  std::vector<IntVector> gens;
  for (const auto& h : md.hilbert) gens.push_back(md.lift(h));
  for (std::size_t k = 0; k < md.u; ++k) {
    gens.push_back(md.unit_basis.row(k));
    gens.push_back(-md.unit_basis.row(k));
  }
  if (gens.empty()) return s;
  return AffineMonoid::build(md.d, gens);
}

KrullResult is_krull(const AffineMonoid& s) {
  const MonoidData& md = s.data();
  KrullResult r;
  r.value = md.normal;
  if (md.normal_witness) r.witness = md.lift(*md.normal_witness);
  return r;
}

// ---------------------------------------------------------------------------
// Primes

namespace {

FacePrime make_prime(const MonoidData& md, std::size_t k) {
  FacePrime p;
  p.face_index = k;
  p.face = md.faces[k];
  std::set<std::size_t> on(p.face.support.begin(), p.face.support.end());
  for (std::size_t i = 0; i < md.gens.size(); ++i)
    if (!on.count(i)) p.ideal_generators.push_back(md.gens[i]);
  p.height = md.facedata[k].height;
  return p;
}

void check_prime(const MonoidData& md, const FacePrime& p) {
  if (p.face_index == 0 || p.face_index >= md.faces.size() ||
      !(md.faces[p.face_index] == p.face))
    throw PreconditionViolated("prime does not belong to this monoid");
}

} // namespace

std::vector<FacePrime> prime_spectrum(const AffineMonoid& s) {
  const MonoidData& md = s.data();
  std::vector<FacePrime> out;
  for (std::size_t k = 1; k < md.faces.size(); ++k) out.push_back(make_prime(md, k));
  std::stable_sort(out.begin(), out.end(),
                   [](const FacePrime& a, const FacePrime& b) { return a.height < b.height; });
  return out;
}

std::vector<FacePrime> height_one_primes(const AffineMonoid& s) {
  std::vector<FacePrime> out;
  for (auto& p : prime_spectrum(s))
    if (p.height == 1) out.push_back(std::move(p));
  return out;
}

bool prime_contains(const AffineMonoid& s, const FacePrime& p, const IntVector& x) {
  const MonoidData& md = s.data();
  check_prime(md, p);
  Point z = md.reduce_checked(x);
  return md.contains(z) && !md.on_face(p.face_index, z);
}

bool prime_included(const FacePrime& p, const FacePrime& q) {
  // S \ F inside S \ G exactly when G is a face of F.
  return std::includes(p.face.support.begin(), p.face.support.end(), q.face.support.begin(),
                       q.face.support.end());
}

LocalizationResult localization_membership(const AffineMonoid& s, const FacePrime& p,
                                           const IntVector& g) {
  const MonoidData& md = s.data();
  check_prime(md, p);
  Point z = md.reduce_checked(g);
  LocalizationResult r;
  auto f = md.localize(p.face_index, z);
  if (f) {
    r.member = true;
    r.certificate = md.lift(*f);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Fractional ideals

namespace {

std::vector<Point> minimalize(const MonoidData& md, std::vector<Point> gens) {
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  std::vector<Point> out;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    bool redundant = false;
    for (std::size_t j = 0; j < gens.size() && !redundant; ++j)
      if (j != i && md.contains(gens[i] - gens[j])) redundant = true;
    if (!redundant) out.push_back(gens[i]);
  }
  return out;
}

std::vector<Point> reduced_gens(const FractionalIdeal& I) {
  std::vector<Point> out;
  for (const auto& g : I.generators) out.push_back(I.parent.data().reduce_checked(g));
  return out;
}

std::vector<IntVector> lift_all(const MonoidData& md, const std::vector<Point>& v) {
  std::vector<IntVector> out;
  for (const auto& p : v) out.push_back(md.lift(p));
  std::sort(out.begin(), out.end());
  return out;
}

} // namespace

FractionalIdeal::FractionalIdeal(AffineMonoid s, std::vector<IntVector> gens)
    : parent(std::move(s)) {
  if (gens.empty()) throw PreconditionViolated("a fractional ideal needs a generator");
  const MonoidData& md = parent.data();
  std::vector<Point> red;
  for (const auto& g : gens) red.push_back(md.reduce_checked(g));
  generators = lift_all(md, minimalize(md, red));
}

bool FractionalIdeal::same_as(const FractionalIdeal& o) const {
  if (!(parent == o.parent)) throw ParentMismatch("ideals of different monoids");
  return generators == o.generators;
}

bool FractionalIdeal::contains(const IntVector& x) const {
  const MonoidData& md = parent.data();
  Point z = md.reduce_checked(x);
  for (const auto& g : generators)
    if (md.contains(z - md.reduce_checked(g))) return true;
  return false;
}

FractionalIdeal principal_ideal(const AffineMonoid& s, const IntVector& g) {
  return FractionalIdeal(s, {g});
}

FractionalIdeal prime_ideal(const AffineMonoid& s, const FacePrime& p) {
  check_prime(s.data(), p);
  return FractionalIdeal(s, p.ideal_generators);
}

FractionalIdeal ideal_dual(const FractionalIdeal& ideal, const BoundOptions& opts) {
  const MonoidData& md = ideal.parent.data();
  auto red = reduced_gens(ideal);
  std::int64_t bound = opts.degree_bound.value_or(md.default_dual_bound(red));
  return FractionalIdeal(ideal.parent, lift_all(md, md.dual(red, bound)));
}

FractionalIdeal v_closure(const FractionalIdeal& ideal, const BoundOptions& opts) {
  return ideal_dual(ideal_dual(ideal, opts), opts);
}

// ---------------------------------------------------------------------------
// t-primes and the weakly Krull decision

TPrimeClassification classify_t_primes(const AffineMonoid& s, const BoundOptions& opts) {
  const MonoidData& md = s.data();
  TPrimeClassification out;
  for (const auto& p : prime_spectrum(s)) {
    PrimeStatus st;
    st.prime = p;
    std::size_t k = p.face_index;
    if (p.height == 1) {
      // Height-one primes are minimal over a principal ideal, hence t-ideals.
      st.t_prime = Tri::True;
      out.primes.push_back(std::move(st));
      continue;
    }
    // P_v meets the face iff every element of P^{-1} lies in S_P, so a single
    // g in P^{-1} outside S_P proves P = (S : g) cap S divisorial.
    try {
      auto pg = md.prime_gens(k);
      std::int64_t bound = opts.degree_bound.value_or(md.default_dual_bound(pg));
      std::vector<Point> box;
      std::optional<BoundExceeded> guard;
      try {
        md.dual(pg, bound, &box);
      } catch (const BoundExceeded& e) {
        guard = e;
      }
      for (const auto& g : box)
        if (!md.contains(g) && !md.localizes(k, g)) {
          st.colon_witness = md.lift(g);
          break;
        }
      if (st.colon_witness) st.t_prime = Tri::True;
      else if (guard) throw *guard;
      else st.t_prime = Tri::False;
    } catch (const BoundExceeded& e) {
      st.failed_bound = e.bound();
      st.t_prime = Tri::Unsupported;
    }
    out.primes.push_back(std::move(st));
  }
  for (auto& st : out.primes) {
    if (st.t_prime == Tri::False) {
      st.t_max = Tri::False;
      continue;
    }
    bool bigger_true = false, bigger_unknown = false;
    for (const auto& other : out.primes) {
      if (other.prime.face_index == st.prime.face_index) continue;
      if (!prime_included(st.prime, other.prime)) continue;
      if (other.t_prime == Tri::True) bigger_true = true;
      if (other.t_prime == Tri::Unsupported) bigger_unknown = true;
    }
    if (bigger_true) st.t_max = Tri::False;
    else if (st.t_prime == Tri::True && !bigger_unknown) st.t_max = Tri::True;
    else st.t_max = Tri::Unsupported;
  }
  for (const auto& st : out.primes) {
    if (st.t_prime == Tri::True) out.t_primes.push_back(st.prime);
    if (st.t_max == Tri::True) out.t_max.push_back(st.prime);
  }
  return out;
}

Verdict is_weakly_krull(const AffineMonoid& s, const TPrimeClassification& cls) {
  const MonoidData& md = s.data();
  Verdict v;
  const PrimeStatus* high = nullptr;
  bool unknown = false;
  std::optional<std::int64_t> bound;
  for (const auto& st : cls.primes) {
    if (st.prime.height < 2) continue;
    if (st.t_prime == Tri::True && (!high || st.prime.height > high->prime.height)) high = &st;
    if (st.t_prime == Tri::Unsupported) {
      unknown = true;
      if (!bound) bound = st.failed_bound;
    }
  }
  if (high) {
    v.value = Tri::False;
    v.reason = "t_maximal_prime_of_height_at_least_two";
    v.prime_face = high->prime.face_index;
    if (high->colon_witness) v.witness = {*high->colon_witness};
    return v;
  }
  if (!unknown) {
    v.value = Tri::True;
    v.reason = "every_t_maximal_prime_has_height_one";
    return v;
  }
  if (md.normal) {
    v.value = Tri::True;
    v.reason = "normal_hence_krull";
    v.failed_bound = bound;
    return v;
  }
  v.value = Tri::Unsupported;
  v.reason = "bound_exceeded";
  v.failed_bound = bound;
  return v;
}

Verdict is_weakly_krull(const AffineMonoid& s, const BoundOptions& opts) {
  return is_weakly_krull(s, classify_t_primes(s, opts));
}

// ---------------------------------------------------------------------------
// Valuation localizations and generalized Krull

Verdict localization_is_valuation(const AffineMonoid& s, const FacePrime& p) {
  const MonoidData& md = s.data();
  check_prime(md, p);
  if (p.height != 1) throw PreconditionViolated("valuation test needs a height-one prime");
  std::size_t k = p.face_index;
  const auto& fd = md.facedata[k];
  Point phi = md.rfacets[fd.facets.front()];
  Verdict v;
  v.prime_face = k;

  IntMatrix row(1, md.m);
  for (std::size_t j = 0; j < md.m; ++j) row(0, j) = static_cast<long>(phi[j]);
  SmithForm sf = smith_normal_form(row);
  auto column = [&](std::size_t j) {
    Point c;
    for (std::size_t i = 0; i < md.m; ++i) c[i] = to_small(sf.right(i, j));
    return c;
  };

  bool saturated = fd.lat_rank + 1 == md.m;
  for (std::size_t j = 0; j < fd.lat_rank; ++j)
    if (fd.diag[j] != 1) saturated = false;
  if (!saturated) {
    for (std::size_t j = 1; j < md.m; ++j) {
      Point x = column(j);
      if (md.face_class(fd, x).is_zero()) continue;
      std::int64_t kx = 2;
      while (!md.face_class(fd, kx * x).is_zero()) ++kx;
      v.value = Tri::False;
      v.reason = "localization_not_saturated";
      v.witness = {md.lift(x), md.lift(kx * x)};
      return v;
    }
    throw Error("internal: unsaturated face lattice without witness");
  }
  for (auto i : fd.off)
    if (dot(phi, md.rgens[i]) == 1) {
      v.value = Tri::True;
      v.reason = "discrete_valuation";
      return v;
    }
  // phi(x) = 1, a value no off-face generator reaches; phi(R_P) is a
  // numerical monoid, so some multiple of x lands in R_P.
  Point x = column(0);
  if (dot(phi, x) < 0) x = -1 * x;
  for (std::int64_t kx = 2; kx <= 100000; ++kx)
    if (md.localizes(k, kx * x)) {
      v.value = Tri::False;
      v.reason = "localization_not_saturated";
      v.witness = {md.lift(x), md.lift(kx * x)};
      return v;
    }
  throw Error("internal: no multiple of the valuation-one element found");
}

Verdict is_generalized_krull(const AffineMonoid& s, const Verdict& wk) {
  Verdict v;
  if (wk.value == Tri::False) {
    v.value = Tri::False;
    v.reason = "not_weakly_krull";
    return v;
  }
  for (const auto& p : height_one_primes(s)) {
    Verdict val = localization_is_valuation(s, p);
    if (val.value == Tri::False) return val;
  }
  if (wk.value == Tri::True) {
    v.value = Tri::True;
    v.reason = "valuation_localizations";
    return v;
  }
  v.value = Tri::Unsupported;
  v.reason = wk.reason;
  v.failed_bound = wk.failed_bound;
  return v;
}

Verdict is_generalized_krull(const AffineMonoid& s, const BoundOptions& opts) {
  return is_generalized_krull(s, is_weakly_krull(s, opts));
}

// ---------------------------------------------------------------------------
// Class group, GCD and weak factoriality

std::vector<Integer> divisor_class_group(const AffineMonoid& s) {
  const MonoidData& md = s.data();
  if (!md.normal) throw NotNormal("class group requested for a non-normal monoid");
  if (md.m == 0) return {};
  IntMatrix a(md.rfacets.size(), md.m);
  for (std::size_t i = 0; i < md.rfacets.size(); ++i)
    for (std::size_t j = 0; j < md.m; ++j) a(i, j) = static_cast<long>(md.rfacets[i][j]);
  std::vector<Integer> out;
  for (const auto& f : invariant_factors(a))
    if (f > 1) out.push_back(f);
  for (std::size_t i = md.m; i < md.rfacets.size(); ++i) out.push_back(0);
  return out;
}

Verdict is_gcd(const AffineMonoid& s) {
  const MonoidData& md = s.data();
  Verdict v;
  if (md.m == 0) {
    v.value = Tri::True;
    v.reason = "group";
    return v;
  }
  std::vector<Point> atoms;
  for (const auto& g : md.rgens) {
    bool atom = true;
    for (const auto& h : md.rgens)
      if (h != g && md.contains(g - h)) {
        atom = false;
        break;
      }
    if (atom) atoms.push_back(g);
  }
  if (atoms.size() == md.m) {
    v.value = Tri::True;
    v.reason = "free_monoid";
    for (const auto& a : atoms) v.witness.push_back(md.lift(a));
    return v;
  }
  // A relation between atoms gives two factorizations of one element.
  std::vector<IntVector> rows(md.m, IntVector(atoms.size()));
  for (std::size_t i = 0; i < md.m; ++i)
    for (std::size_t j = 0; j < atoms.size(); ++j) rows[i][j] = static_cast<long>(atoms[j][i]);
  auto kernel = orthogonal_complement(rows, atoms.size());
  const IntVector& z = kernel.front();
  std::vector<IntVector> left, right;
  Point elem;
  for (std::size_t j = 0; j < atoms.size(); ++j) {
    long c = z[j].get_si();
    for (long t = 0; t < std::labs(c); ++t) (c > 0 ? left : right).push_back(md.lift(atoms[j]));
    if (c > 0) elem = elem + c * atoms[j];
  }
  v.value = Tri::False;
  v.reason = "non_unique_factorization";
  v.witness = {md.lift(elem)};
  v.factorizations = {right, left};
  return v;
}

Verdict is_weakly_factorial(const AffineMonoid& s) {
  const MonoidData& md = s.data();
  Verdict v;
  if (!md.normal) {
    v.value = Tri::Unsupported;
    v.reason = "non-normal t-class group not computed";
    return v;
  }
  auto cl = divisor_class_group(s);
  if (cl.empty()) {
    v.value = Tri::True;
    v.reason = "krull_with_trivial_class_group";
  } else {
    v.value = Tri::False;
    v.reason = "nontrivial_class_group";
  }
  return v;
}

// ---------------------------------------------------------------------------
// Primary components and the direct oracle

namespace {

Point checked_nonunit(const MonoidData& md, const IntVector& alpha) {
  Point a = md.reduce_checked(alpha);
  if (!md.contains(a)) throw PreconditionViolated("alpha must lie in the monoid");
  if (a.is_zero()) throw PreconditionViolated("alpha must not be a unit");
  return a;
}

std::vector<Point> component(const MonoidData& md, const Point& a, std::size_t face,
                             const std::vector<Point>& box) {
  std::vector<Point> out;
  for (const auto& y : box)
    if (md.localizes(face, y - a)) out.push_back(y);
  return out;
}

} // namespace

std::vector<IntVector> primary_component_exponents(const AffineMonoid& s,
                                                   const IntVector& alpha,
                                                   const FacePrime& p,
                                                   std::int64_t box_bound) {
  const MonoidData& md = s.data();
  check_prime(md, p);
  Point a = checked_nonunit(md, alpha);
  if (p.height != 1) throw PreconditionViolated("P must be a height-one prime");
  if (md.on_face(p.face_index, a)) throw PreconditionViolated("P does not contain alpha");
  return lift_all(md, component(md, a, p.face_index, md.elements_upto(box_bound)));
}

ClaimBResult claim_b_identity(const AffineMonoid& s, const IntVector& alpha,
                              std::optional<std::int64_t> box_bound) {
  const MonoidData& md = s.data();
  Point a = checked_nonunit(md, alpha);
  ClaimBResult r;
  r.box = box_bound.value_or(md.deg(a) + md.cdeg + 2 * md.maxdeg);
  auto box = md.elements_upto(r.box);
  r.elements_checked = box.size();
  PointSet inter(box.begin(), box.end());
  for (const auto& p : height_one_primes(s)) {
    if (md.on_face(p.face_index, a)) continue;
    ++r.primes_used;
    auto comp = component(md, a, p.face_index, box);
    PointSet keep(comp.begin(), comp.end());
    for (auto it = inter.begin(); it != inter.end();)
      it = keep.count(*it) ? std::next(it) : inter.erase(it);
  }
  for (const auto& y : box) {
    bool lhs = inter.count(y) > 0;
    bool rhs = md.contains(y - a);
    if (lhs != rhs) {
      r.holds = false;
      r.mismatch = md.lift(y);
      break;
    }
  }
  return r;
}

OracleResult wk_oracle_direct(const AffineMonoid& s, const BoundOptions& opts) {
  const MonoidData& md = s.data();
  OracleResult r;
  r.box = opts.degree_bound.value_or(md.cdeg + 2 * md.maxdeg);
  r.bounded = !md.normal;
  if (md.normal) return r;
  auto facets = height_one_primes(s);
  for (const auto& g : md.cone_points_upto(r.box)) {
    if (md.in_cone(g - md.conductor) || md.contains(g)) continue;
    bool everywhere = std::all_of(facets.begin(), facets.end(), [&](const FacePrime& p) {
      return md.localizes(p.face_index, g);
    });
    if (everywhere) {
      r.weakly_krull = false;
      r.bounded = false;
      r.witness = md.lift(g);
      break;
    }
  }
  return r;
}

std::vector<std::size_t> check_face_primes(const AffineMonoid& s, std::int64_t box) {
  const MonoidData& md = s.data();
  auto elems = md.elements_upto(box);
  PointSet in_box(elems.begin(), elems.end());
  std::vector<std::size_t> bad;
  for (std::size_t k = 1; k < md.faces.size(); ++k) {
    auto in_p = [&](const Point& x) { return !md.on_face(k, x); };
    bool ok = true;
    for (std::size_t i = 0; i < elems.size() && ok; ++i)
      for (std::size_t j = i; j < elems.size() && ok; ++j) {
        Point sum = elems[i] + elems[j];
        if (!in_box.count(sum)) continue;
        bool either = in_p(elems[i]) || in_p(elems[j]);
        if (in_p(sum) != either) ok = false;
      }
    if (!ok) bad.push_back(k);
  }
  return bad;
}

PropertyReport analyze(const AffineMonoid& s, const AnalysisOptions& opts) {
  const MonoidData& md = s.data();
  PropertyReport rep;
  rep.warnings = md.warnings;

  rep.normal_krull.value = md.normal ? Tri::True : Tri::False;
  rep.normal_krull.reason = md.normal ? "saturated" : "hilbert_basis_element_missing";
  if (md.normal_witness) rep.normal_krull.witness = {md.lift(*md.normal_witness)};

  auto cls = classify_t_primes(s, opts.bounds);
  rep.spectrum = cls.primes;
  rep.weakly_krull = is_weakly_krull(s, cls);
  rep.generalized_krull = is_generalized_krull(s, rep.weakly_krull);
  rep.gcd_factorial = is_gcd(s);
  rep.weakly_factorial = is_weakly_factorial(s);
  if (md.normal) rep.class_group = divisor_class_group(s);
  rep.oracle = wk_oracle_direct(s, opts.bounds);
  for (const auto& st : cls.primes)
    if (st.t_prime == Tri::Unsupported)
      rep.warnings.push_back("t-status of prime " + std::to_string(st.prime.face_index) +
                             " undecided at degree bound " +
                             std::to_string(st.failed_bound.value_or(0)));
  return rep;
}

} // namespace wkrull
