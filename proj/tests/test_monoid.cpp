#include "doctest.h"

#include "wkrull/errors.hpp"
#include "wkrull/monoid.hpp"
#include "test_support.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

using namespace wkrull;
using namespace wkrull::testing;

namespace {

AffineMonoid make(std::size_t d, std::vector<IntVector> gens) {
  return AffineMonoid::build(d, std::move(gens));
}

FacePrime prime_with_face(const AffineMonoid& s, std::set<IntVector> face_gens) {
  for (const auto& p : prime_spectrum(s)) {
    std::set<IntVector> support;
    for (auto i : p.face.support) support.insert(s.generators()[i]);
    if (support == face_gens) return p;
  }
  FAIL("no prime with the requested face");
  return {};
}

std::set<IntVector> as_set(const std::vector<IntVector>& v) { return {v.begin(), v.end()}; }

// Small positive monoids: nonnegative entries, so S lies in N^d and the sum
// of coordinates bounds every search.
std::vector<AffineMonoid> small_corpus(std::uint64_t seed, std::size_t count, long hi = 3) {
  std::mt19937_64 rng(seed);
  std::vector<AffineMonoid> out;
  while (out.size() < count) {
    std::size_t d = std::uniform_int_distribution<std::size_t>(1, 3)(rng);
    std::size_t n = std::uniform_int_distribution<std::size_t>(1, 4)(rng);
    auto gens = random_gens(rng, d, n, 0, hi);
    try {
      out.push_back(make(d, gens));
    } catch (const BoundExceeded&) {
    }
  }
  return out;
}

struct Naive {
  std::set<IntVector> elems;
  IntVector grading;
  long degree;
  bool has(const IntVector& x) const {
    if (dot(grading, x) > degree) throw std::logic_error("naive set too small");
    return elems.count(x) > 0;
  }
};

Naive naive_of(const AffineMonoid& s, long degree) {
  IntVector g = ones(s.ambient_dim());
  return {naive_monoid(s.generators(), g, degree), g, degree};
}

bool nonnegative(const IntVector& x) {
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] < 0) return false;
  return true;
}

// Invariant factors from determinantal divisors.
std::vector<Integer> invariant_factors_by_minors(const IntMatrix& a) {
  std::size_t r = a.rows(), c = a.cols();
  std::vector<Integer> divisors{1};
  for (std::size_t k = 1; k <= std::min(r, c); ++k) {
    Integer g = 0;
    std::vector<bool> rs(r), cs(c);
    std::fill(rs.begin(), rs.begin() + k, true);
    do {
      std::fill(cs.begin(), cs.end(), false);
      std::fill(cs.begin(), cs.begin() + k, true);
      do {
        IntMatrix sub(k, k);
        std::size_t i2 = 0;
        for (std::size_t i = 0; i < r; ++i) {
          if (!rs[i]) continue;
          std::size_t j2 = 0;
          for (std::size_t j = 0; j < c; ++j)
            if (cs[j]) sub(i2, j2++) = a(i, j);
          ++i2;
        }
        g = gcd(g, sub.determinant());
      } while (std::prev_permutation(cs.begin(), cs.end()));
    } while (std::prev_permutation(rs.begin(), rs.end()));
    if (g == 0) break;
    divisors.push_back(g);
  }
  std::vector<Integer> out;
  for (std::size_t k = 1; k < divisors.size(); ++k) out.push_back(divisors[k] / divisors[k - 1]);
  return out;
}

} // namespace

TEST_CASE("build examples") {
  auto n2 = make(2, {{1, 0}, {0, 1}});
  CHECK(n2.rank() == 2);
  CHECK(n2.unit_rank() == 0);
  CHECK(n2.cone().facets.size() == 2);

  auto ns = make(1, {{2}, {3}});
  CHECK(ns.rank() == 1);
  CHECK(ns.grading() == IntVector{1});

  auto u = make(2, {{1, 0}, {-1, 0}, {0, 1}});
  CHECK(u.unit_rank() == 1);
  CHECK(u.reduced_rank() == 1);
  CHECK(u.contains({-7, 2}));
  CHECK_FALSE(u.contains({3, -1}));

  auto w = make(2, {{0, 0}, {1, 0}, {1, 0}, {0, 1}});
  CHECK(w.generators().size() == 2);
  CHECK(w.warnings().size() == 2);

  CHECK_THROWS_AS(make(2, {{1, 0, 0}}), DimensionMismatch);
  CHECK_THROWS_AS(make(5, {{1, 0, 0, 0, 0}}), UnsupportedDimension);
}

TEST_CASE("membership examples and certificates") {
  auto n2 = make(2, {{1, 0}, {0, 1}});
  auto c = membership(n2, {3, 5});
  REQUIRE(c);
  CHECK(n2.generators() == std::vector<IntVector>{{0, 1}, {1, 0}});
  CHECK(c->multiplicities == std::vector<Integer>{5, 3});

  CHECK_FALSE(membership(make(1, {{2}, {3}}), {1}));
  CHECK_FALSE(membership(make(2, {{0, 1}, {2, 1}, {3, 1}}), {1, 1}));
  CHECK_THROWS_AS(membership(make(2, {{2, 0}, {0, 2}}), {1, 0}), NotInQuotientGroup);

  auto u = make(2, {{1, 0}, {-1, 0}, {0, 1}});
  auto cu = membership(u, {-5, 3});
  REQUIRE(cu);
  IntVector sum = cu->unit_part;
  for (std::size_t i = 0; i < u.generators().size(); ++i)
    sum += cu->multiplicities[i] * u.generators()[i];
  CHECK(sum == IntVector{-5, 3});
}

TEST_CASE("membership agrees with naive enumeration") {
  for (const auto& s : small_corpus(11, 40)) {
    std::size_t d = s.ambient_dim();
    long r = d == 3 ? 4 : 7;
    auto naive = naive_of(s, static_cast<long>(d) * r);
    for (const auto& x : cube(d, r)) {
      if (!nonnegative(x)) continue;
      if (!s.to_reduced(x)) {
        CHECK_FALSE(naive.has(x));
        CHECK_THROWS_AS(s.contains(x), NotInQuotientGroup);
        continue;
      }
      bool in = s.contains(x);
      CHECK(in == naive.has(x));
      auto cert = membership(s, x);
      CHECK(cert.has_value() == in);
      if (cert) {
        IntVector sum = cert->unit_part;
        for (std::size_t i = 0; i < s.generators().size(); ++i) {
          CHECK(cert->multiplicities[i] >= 0);
          sum += cert->multiplicities[i] * s.generators()[i];
        }
        CHECK(sum == x);
      }
    }
  }
}

TEST_CASE("root closure and Krull examples") {
  auto ns = make(1, {{2}, {3}});
  CHECK(root_closure(ns).generators() == std::vector<IntVector>{{1}});
  auto k = is_krull(ns);
  CHECK_FALSE(k.value);
  CHECK(k.witness == IntVector{1});

  auto n2 = make(2, {{1, 0}, {0, 1}});
  CHECK(root_closure(n2).generators() == n2.generators());
  CHECK(is_krull(n2).value);

  auto t = make(2, {{0, 1}, {2, 1}, {3, 1}});
  CHECK(as_set(root_closure(t).generators()) ==
        std::set<IntVector>{{0, 1}, {1, 1}, {2, 1}, {3, 1}});
  auto kt = is_krull(t);
  CHECK_FALSE(kt.value);
  CHECK(kt.witness == IntVector{1, 1});
}

TEST_CASE("root closure is idempotent and Krull") {
  for (const auto& s : small_corpus(12, 60, 5)) {
    auto r = root_closure(s);
    CHECK(is_krull(r).value);
    CHECK(r.is_normal());
    CHECK(root_closure(r).generators() == r.generators());
    CHECK(is_krull(s).value == s.is_normal());
    for (const auto& g : s.generators()) CHECK(r.contains(g));
  }
}

TEST_CASE("prime spectrum examples") {
  auto n2 = make(2, {{1, 0}, {0, 1}});
  auto sp = prime_spectrum(n2);
  REQUIRE(sp.size() == 3);
  CHECK(sp[0].height == 1);
  CHECK(sp[1].height == 1);
  CHECK(sp[2].height == 2);
  CHECK(height_one_primes(n2).size() == 2);

  auto ns = make(1, {{2}, {3}});
  auto spn = prime_spectrum(ns);
  REQUIRE(spn.size() == 1);
  CHECK(spn[0].height == 1);
  CHECK(as_set(spn[0].ideal_generators) == std::set<IntVector>{{2}, {3}});

  auto t = make(2, {{0, 1}, {2, 1}, {3, 1}});
  auto spt = prime_spectrum(t);
  REQUIRE(spt.size() == 3);
  CHECK(prime_with_face(t, {{0, 1}}).height == 1);
  CHECK(prime_with_face(t, {{3, 1}}).height == 1);
  CHECK(prime_with_face(t, {}).height == 2);
  CHECK(prime_included(prime_with_face(t, {{0, 1}}), prime_with_face(t, {})));
  CHECK_FALSE(prime_included(prime_with_face(t, {}), prime_with_face(t, {{0, 1}})));
}

TEST_CASE("face complements are primes") {
  for (const auto& s : small_corpus(13, 30)) {
    CHECK(height_one_primes(s).size() == s.cone().facets.size());
    CHECK(check_face_primes(s, 12).empty());

    std::size_t d = s.ambient_dim();
    long box = d == 3 ? 7 : 12;
    auto naive = naive_of(s, box);
    std::vector<IntVector> elems(naive.elems.begin(), naive.elems.end());
    for (const auto& p : prime_spectrum(s)) {
      std::vector<IntVector> fg;
      for (auto i : p.face.support) fg.push_back(s.generators()[i]);
      auto face = naive_monoid(fg, naive.grading, box);
      for (const auto& x : elems) CHECK(prime_contains(s, p, x) == !face.count(x));
      bool closed = true;
      for (std::size_t i = 0; i < elems.size() && closed; ++i)
        for (std::size_t j = i; j < elems.size(); ++j) {
          IntVector sum = elems[i] + elems[j];
          if (dot(naive.grading, sum) > box) continue;
          if (face.count(sum) && !(face.count(elems[i]) && face.count(elems[j]))) {
            closed = false;
            break;
          }
        }
      CHECK(closed);
    }
  }
}

TEST_CASE("localization examples") {
  auto n2 = make(2, {{1, 0}, {0, 1}});
  auto r = localization_membership(n2, prime_with_face(n2, {{1, 0}}), {-3, 2});
  CHECK(r.member);
  CHECK(r.certificate == IntVector{3, 0});

  auto ns = make(1, {{2}, {3}});
  CHECK_FALSE(localization_membership(ns, prime_spectrum(ns)[0], {-1}).member);

  auto t = make(2, {{0, 1}, {2, 1}, {3, 1}});
  CHECK_FALSE(localization_membership(t, prime_with_face(t, {{0, 1}}), {1, 1}).member);
  auto via = localization_membership(t, prime_with_face(t, {{3, 1}}), {1, 1});
  CHECK(via.member);
  CHECK(via.certificate == IntVector{3, 1});
  CHECK_FALSE(localization_membership(t, prime_with_face(t, {}), {1, 1}).member);
}

TEST_CASE("localization agrees with a bounded face search") {
  for (const auto& s : small_corpus(14, 30)) {
    std::size_t d = s.ambient_dim();
    long r = d == 3 ? 2 : 4;
    long face_deg = 12;
    auto naive = naive_of(s, static_cast<long>(d) * r + face_deg);
    for (const auto& p : prime_spectrum(s)) {
      std::vector<IntVector> fg;
      for (auto i : p.face.support) fg.push_back(s.generators()[i]);
      auto face = naive_monoid(fg, naive.grading, face_deg);
      for (const auto& g : cube(d, r)) {
        if (!s.to_reduced(g)) continue;
        auto res = localization_membership(s, p, g);
        if (res.member) {
          REQUIRE(res.certificate);
          const IntVector& f = *res.certificate;
          CHECK(s.contains(f));
          CHECK_FALSE(prime_contains(s, p, f));
          CHECK(s.contains(g + f));
        } else {
          for (const auto& f : face) {
            IntVector y = g + f;
            if (nonnegative(y)) CHECK_FALSE(naive.has(y));
          }
        }
      }
    }
  }
}

TEST_CASE("ideal dual examples") {
  auto ns = make(1, {{2}, {3}});
  CHECK(ideal_dual(principal_ideal(ns, {0})).generators == std::vector<IntVector>{{0}});
  auto m = prime_ideal(ns, prime_spectrum(ns)[0]);
  CHECK(as_set(ideal_dual(m).generators) == std::set<IntVector>{{0}, {1}});

  auto n2 = make(2, {{1, 0}, {0, 1}});
  auto mn = prime_ideal(n2, prime_with_face(n2, {}));
  CHECK(ideal_dual(mn).generators == std::vector<IntVector>{{0, 0}});
  CHECK(ideal_dual(mn).same_as(principal_ideal(n2, {0, 0})));
}

TEST_CASE("ideal dual agrees with box enumeration") {
  std::mt19937_64 rng(15);
  for (const auto& s : small_corpus(15, 25)) {
    std::size_t d = s.ambient_dim();
    long r = d == 3 ? 2 : 4;
    std::vector<FractionalIdeal> ideals;
    for (const auto& p : prime_spectrum(s)) ideals.push_back(prime_ideal(s, p));
    const auto& gens = s.generators();
    std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
    ideals.push_back(principal_ideal(s, gens[pick(rng)]));
    ideals.push_back(FractionalIdeal(s, {gens[pick(rng)], gens[pick(rng)] + gens[pick(rng)]}));
    for (const auto& ideal : ideals) {
      FractionalIdeal dual = ideal_dual(ideal);
      long top = 0;
      for (const auto& x : ideal.generators) top = std::max(top, dot(ones(d), x).get_si());
      auto naive = naive_of(s, static_cast<long>(d) * r + top);
      for (const auto& g : cube(d, r)) {
        if (!s.to_reduced(g)) continue;
        bool expect = std::all_of(ideal.generators.begin(), ideal.generators.end(),
                                  [&](const IntVector& x) {
                                    IntVector y = g + x;
                                    return nonnegative(y) && naive.has(y);
                                  });
        CHECK(dual.contains(g) == expect);
      }
      for (const auto& a : dual.generators)
        for (const auto& b : dual.generators)
          if (!(a == b)) CHECK_FALSE(s.contains(a - b));
    }
  }
}

TEST_CASE("v-closure is a closure operator") {
  for (const auto& s : small_corpus(16, 25)) {
    const auto& gens = s.generators();
    for (const auto& p : prime_spectrum(s)) {
      FractionalIdeal i = prime_ideal(s, p);
      FractionalIdeal iv = v_closure(i);
      for (const auto& x : i.generators) CHECK(iv.contains(x));
      CHECK(v_closure(iv).same_as(iv));
      FractionalIdeal j(s, [&] {
        auto g = i.generators;
        g.push_back(IntVector(s.ambient_dim()));
        return g;
      }());
      FractionalIdeal jv = v_closure(j);
      for (const auto& x : iv.generators) CHECK(jv.contains(x));
      if (p.height == 1) CHECK(iv.same_as(i));
    }
    for (const auto& g : gens) CHECK(v_closure(principal_ideal(s, g)).same_as(principal_ideal(s, g)));
  }
}

TEST_CASE("t-prime classification examples") {
  auto ns = make(1, {{2}, {3}});
  auto cn = classify_t_primes(ns);
  REQUIRE(cn.t_max.size() == 1);
  CHECK(cn.t_max[0].height == 1);

  auto n2 = make(2, {{1, 0}, {0, 1}});
  auto c2 = classify_t_primes(n2);
  CHECK(c2.t_max.size() == 2);
  for (const auto& p : c2.t_max) CHECK(p.height == 1);
  for (const auto& st : c2.primes)
    if (st.prime.height == 2) CHECK(st.t_prime == Tri::False);
}

TEST_CASE("normal monoids have the facet primes as t-maximal primes") {
  for (const auto& s : small_corpus(17, 30, 4)) {
    auto r = root_closure(s);
    auto cls = classify_t_primes(r);
    std::set<std::size_t> tmax, facets;
    for (const auto& p : cls.t_max) tmax.insert(p.face_index);
    for (const auto& p : height_one_primes(r)) facets.insert(p.face_index);
    CHECK(tmax == facets);
  }
}

TEST_CASE("weakly Krull examples") {
  for (auto gens : std::vector<std::vector<IntVector>>{{{2}, {3}}, {{3}, {5}, {7}}, {{4}, {6}, {9}}}) {
    auto s = make(1, gens);
    CHECK(is_weakly_krull(s).value == Tri::True);
    CHECK(wk_oracle_direct(s).weakly_krull);
  }
  CHECK(is_weakly_krull(make(2, {{1, 0}, {0, 1}})).value == Tri::True);
  CHECK(wk_oracle_direct(make(2, {{1, 0}, {0, 1}})).weakly_krull);

  auto t = make(2, {{0, 1}, {2, 1}, {3, 1}});
  CHECK(is_weakly_krull(t).value == Tri::True);
  CHECK(wk_oracle_direct(t).weakly_krull);

  // N^2 without (1,0): the maximal ideal is divisorial.
  auto h = make(2, {{2, 0}, {3, 0}, {0, 1}, {1, 1}});
  auto v = is_weakly_krull(h);
  CHECK(v.value == Tri::False);
  REQUIRE(v.prime_face);
  auto mx = prime_with_face(h, {});
  CHECK(*v.prime_face == mx.face_index);
  REQUIRE(v.witness.size() == 1);
  const IntVector& g = v.witness[0];
  for (const auto& x : mx.ideal_generators) CHECK(h.contains(g + x));
  CHECK_FALSE(localization_membership(h, mx, g).member);
  auto o = wk_oracle_direct(h);
  CHECK_FALSE(o.weakly_krull);
  CHECK(o.witness == IntVector{1, 0});
  CHECK(is_generalized_krull(h).value == Tri::False);
}

TEST_CASE("generalized Krull examples") {
  CHECK(is_generalized_krull(make(2, {{1, 0}, {0, 1}})).value == Tri::True);
  auto ns = make(1, {{2}, {3}});
  auto v = is_generalized_krull(ns);
  CHECK(v.value == Tri::False);
  CHECK(v.reason == "localization_not_saturated");
  REQUIRE(v.witness.size() == 2);
  auto m = prime_spectrum(ns)[0];
  CHECK_FALSE(localization_membership(ns, m, v.witness[0]).member);
  CHECK(localization_membership(ns, m, v.witness[1]).member);
}

TEST_CASE("class group examples") {
  CHECK(divisor_class_group(make(2, {{1, 0}, {0, 1}})).empty());
  CHECK(divisor_class_group(make(2, {{2, 0}, {1, 1}, {0, 2}})) == std::vector<Integer>{2});
  CHECK(divisor_class_group(make(2, {{0, 1}, {1, 1}, {2, 1}, {3, 1}})) == std::vector<Integer>{3});
  CHECK_THROWS_AS(divisor_class_group(make(1, {{2}, {3}})), NotNormal);
}

TEST_CASE("class group agrees with determinantal divisors") {
  for (const auto& s0 : small_corpus(18, 40, 4)) {
    auto s = root_closure(s0);
    const IntMatrix& basis = s.lattice_basis();
    const auto& facets = s.cone().facets;
    IntMatrix v(facets.size(), basis.rows());
    for (std::size_t i = 0; i < facets.size(); ++i) {
      Integer c = 0;
      for (std::size_t j = 0; j < basis.rows(); ++j) {
        v(i, j) = dot(facets[i], basis.row(j));
        c = gcd(c, v(i, j));
      }
      for (std::size_t j = 0; j < basis.rows(); ++j) v(i, j) /= c;
    }
    std::vector<Integer> expect;
    for (const auto& f : invariant_factors_by_minors(v))
      if (f != 1) expect.push_back(f);
    for (std::size_t k = basis.rows(); k < facets.size(); ++k) expect.push_back(0);
    CHECK(divisor_class_group(s) == expect);
  }
}

TEST_CASE("gcd and weakly factorial examples") {
  auto n2 = make(2, {{1, 0}, {0, 1}});
  CHECK(is_gcd(n2).value == Tri::True);
  CHECK(is_weakly_factorial(n2).value == Tri::True);

  auto v = make(2, {{2, 0}, {1, 1}, {0, 2}});
  CHECK(is_gcd(v).value == Tri::False);
  CHECK(is_weakly_factorial(v).value == Tri::False);

  auto ns = make(1, {{2}, {3}});
  auto g = is_gcd(ns);
  CHECK(g.value == Tri::False);
  REQUIRE(g.factorizations.size() == 2);
  auto total = [](const std::vector<IntVector>& f) {
    IntVector s(1);
    for (const auto& x : f) s += x;
    return s;
  };
  CHECK(total(g.factorizations[0]) == total(g.factorizations[1]));
  CHECK(g.factorizations[0] != g.factorizations[1]);
  auto wf = is_weakly_factorial(ns);
  CHECK(wf.value == Tri::Unsupported);
  CHECK(wf.reason == "non-normal t-class group not computed");
}

TEST_CASE("primary components") {
  auto n2 = make(2, {{1, 0}, {0, 1}});
  auto p = prime_with_face(n2, {{1, 0}});
  std::set<IntVector> expect;
  for (long a = 0; a <= 4; ++a)
    for (long b = 1; a + b <= 4; ++b) expect.insert(IntVector{a, b});
  CHECK(as_set(primary_component_exponents(n2, {1, 1}, p, 4)) == expect);
  CHECK_THROWS_AS(primary_component_exponents(n2, {0, 0}, p, 4), PreconditionViolated);
  CHECK_THROWS_AS(primary_component_exponents(n2, {1, 0}, p, 4), PreconditionViolated);

  auto ns = make(1, {{2}, {3}});
  CHECK(primary_component_exponents(ns, {2}, prime_spectrum(ns)[0], 8) ==
        std::vector<IntVector>{{2}, {4}, {5}, {6}, {7}, {8}});

  auto u = make(2, {{1, 0}, {-1, 0}, {0, 1}});
  CHECK_THROWS_AS(primary_component_exponents(u, {3, 0}, prime_spectrum(u)[0], 4),
                  PreconditionViolated);
}

TEST_CASE("primary decomposition of principal ideals in weakly Krull monoids") {
  std::mt19937_64 rng(19);
  for (const auto& s : small_corpus(19, 25)) {
    if (is_weakly_krull(s).value != Tri::True) continue;
    auto naive = naive_of(s, 6);
    std::vector<IntVector> elems;
    for (const auto& x : naive.elems)
      if (!x.is_zero()) elems.push_back(x);
    for (int k = 0; k < 3; ++k) {
      const auto& a = elems[std::uniform_int_distribution<std::size_t>(0, elems.size() - 1)(rng)];
      auto r = claim_b_identity(s, a);
      CHECK(r.holds);
      CHECK(r.elements_checked > 0);
    }
  }
}

TEST_CASE("report implication chain and oracle agreement") {
  std::size_t definite = 0, total = 0;
  for (const auto& s : small_corpus(20, 60, 4)) {
    auto rep = analyze(s);
    ++total;
    auto implies = [](Tri a, Tri b) { return a != Tri::True || b == Tri::True; };
    CHECK(implies(rep.normal_krull.value, rep.generalized_krull.value));
    CHECK(implies(rep.generalized_krull.value, rep.weakly_krull.value));
    CHECK(implies(rep.gcd_factorial.value, rep.weakly_factorial.value));
    CHECK(implies(rep.weakly_factorial.value, rep.weakly_krull.value));
    if (rep.weakly_krull.value == Tri::True) CHECK(rep.oracle.weakly_krull);
    if (rep.weakly_krull.value == Tri::False) CHECK_FALSE(rep.oracle.weakly_krull);
    if (rep.weakly_krull.value != Tri::Unsupported) ++definite;
    if (s.is_normal()) {
      CHECK(rep.normal_krull.value == Tri::True);
      CHECK(rep.generalized_krull.value == Tri::True);
    }
  }
  CHECK(definite * 10 >= total * 9);
}
