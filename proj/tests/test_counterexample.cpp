#include "doctest.h"

#include "wkrull/counterexample.hpp"
#include "wkrull/errors.hpp"

#include <random>

using namespace wkrull;

namespace {

using P = DyadicLaurentPoly;

Rational q(long a, long b = 1) {
  Rational r(a, b);
  r.canonicalize();
  return r;
}

std::vector<Rational> coeffs(std::initializer_list<long> cs) {
  std::vector<Rational> out;
  for (long c : cs) out.emplace_back(c);
  return out;
}

// Kronecker's method: a factor g of degree k of an integer polynomial f has
// g(x) dividing f(x) at every integer x, and is fixed by k + 1 such values.

Integer eval(const std::vector<Integer>& f, long x) {
  Integer v = 0;
  for (auto it = f.rbegin(); it != f.rend(); ++it) v = v * x + *it;
  return v;
}

std::vector<Integer> positive_divisors(Integer v) {
  v = abs(v);
  std::vector<Integer> out;
  for (Integer d = 1; d * d <= v; ++d)
    if (v % d == 0) {
      out.push_back(d);
      if (d * d != v) out.push_back(v / d);
    }
  return out;
}

std::vector<Rational> interpolate(const std::vector<long>& xs, const std::vector<Integer>& ys) {
  const std::size_t n = xs.size();
  std::vector<Rational> dd(ys.begin(), ys.end());
  for (std::size_t j = 1; j < n; ++j)
    for (std::size_t i = n - 1; i >= j; --i)
      dd[i] = (dd[i] - dd[i - 1]) / Rational(xs[i] - xs[i - j]);
  std::vector<Rational> poly{dd[n - 1]};
  for (std::size_t i = n - 1; i-- > 0;) {
    std::vector<Rational> next(poly.size() + 1, Rational(0));
    for (std::size_t k = 0; k < poly.size(); ++k) {
      next[k + 1] += poly[k];
      next[k] -= poly[k] * xs[i];
    }
    next[0] += dd[i];
    poly = next;
  }
  while (!poly.empty() && poly.back() == 0) poly.pop_back();
  return poly;
}

bool divides_q(const std::vector<Rational>& g, std::vector<Rational> f) {
  while (f.size() >= g.size()) {
    const Rational c = f.back() / g.back();
    const std::size_t off = f.size() - g.size();
    for (std::size_t j = 0; j < g.size(); ++j) f[off + j] -= c * g[j];
    f.pop_back();
  }
  for (const auto& c : f)
    if (c != 0) return false;
  return true;
}

bool naive_irreducible(const std::vector<Integer>& f) {
  const long n = static_cast<long>(f.size()) - 1;
  if (n <= 0) return false;
  if (n == 1) return true;
  std::vector<std::pair<std::size_t, long>> points;
  for (long x = -8; x <= 8; ++x) {
    const Integer v = eval(f, x);
    if (v == 0) return false;
    points.emplace_back(positive_divisors(v).size(), x);
  }
  std::sort(points.begin(), points.end());
  const std::vector<Rational> fq(f.begin(), f.end());
  for (long k = 1; 2 * k <= n; ++k) {
    std::vector<long> xs;
    std::vector<std::vector<Integer>> choices;
    for (long i = 0; i <= k; ++i) {
      xs.push_back(points[static_cast<std::size_t>(i)].second);
      std::vector<Integer> ds;
      for (const auto& d : positive_divisors(eval(f, xs.back()))) {
        ds.push_back(d);
        if (i > 0) ds.push_back(-d);
      }
      choices.push_back(ds);
    }
    std::vector<std::size_t> idx(choices.size(), 0);
    while (true) {
      std::vector<Integer> ys;
      for (std::size_t i = 0; i < idx.size(); ++i) ys.push_back(choices[i][idx[i]]);
      const auto g = interpolate(xs, ys);
      bool integral = static_cast<long>(g.size()) == k + 1;
      for (const auto& c : g) integral = integral && c.get_den() == 1;
      if (integral && divides_q(g, fq)) return false;
      std::size_t i = 0;
      while (i < idx.size() && ++idx[i] == choices[i].size()) idx[i++] = 0;
      if (i == idx.size()) break;
    }
  }
  return true;
}

std::vector<Integer> random_int_poly(std::mt19937_64& rng, long deg, long bound) {
  std::uniform_int_distribution<long> c(-bound, bound);
  std::vector<Integer> f;
  for (long i = 0; i <= deg; ++i) f.emplace_back(c(rng));
  while (f.back() == 0) f.back() = c(rng);
  return f;
}

std::vector<Integer> int_mul(const std::vector<Integer>& a, const std::vector<Integer>& b) {
  std::vector<Integer> out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

} // namespace

TEST_CASE("dyadic Laurent polynomials") {
  const P f({{q(1, 2), q(3)}, {q(-1, 4), q(1, 3)}});
  CHECK(f.depth() == 2);
  CHECK(f.str() == "1/3*X^(-1/4) + 3*X^(1/2)");
  CHECK(P().str() == "0");
  CHECK(P::one_plus(0).depth() == 0);
  CHECK_THROWS_AS(P(P::Terms{{q(1, 3), q(1)}}), PreconditionViolated);
  CHECK((f - f).is_zero());
  CHECK(P(P::Terms{{q(1, 2), q(0)}}).is_zero());
  CHECK(f * P::monomial(0) == f);

  std::mt19937_64 rng(5);
  std::uniform_int_distribution<long> num(-8, 8), den(0, 3), c(-5, 5);
  auto random_poly = [&] {
    P::Terms t;
    for (int i = 0; i < 4; ++i) t[q(num(rng), 1L << den(rng))] = q(c(rng));
    return P(t);
  };
  for (int i = 0; i < 100; ++i) {
    const P a = random_poly(), b = random_poly(), d = random_poly();
    CHECK(a * b == b * a);
    CHECK((a * b) * d == a * (b * d));
    CHECK(a * (b + d) == a * b + a * d);
    CHECK(a.depth() <= 3);
  }
}

TEST_CASE("univariate images") {
  auto one = to_univariate(P::one_plus(1), 1);
  CHECK(one.shift == 0);
  CHECK(one.coeffs == coeffs({1, 1}));
  auto two = to_univariate(P::one_plus(2), 2);
  CHECK(two.coeffs == coeffs({1, 1}));
  auto three = to_univariate(P({{q(-1, 2), q(1)}, {q(1, 2), q(1)}}), 1);
  CHECK(three.shift == -1);
  CHECK(three.coeffs == coeffs({1, 0, 1}));
  // At a larger depth the same element is sparser.
  CHECK(to_univariate(P::one_plus(1), 3).coeffs == coeffs({1, 0, 0, 0, 1}));
  CHECK_THROWS_AS(to_univariate(P::one_plus(3), 2), DepthExceeded);
  CHECK_THROWS_AS(to_univariate(P::one_plus(1), kMaxDepth + 1), DepthExceeded);
  CHECK(to_univariate(P(), 2).coeffs.empty());
}

TEST_CASE("primality in K[G_n]") {
  for (int n = 0; n <= kMaxDepth; ++n) {
    CAPTURE(n);
    CHECK(is_prime_in_gn(P::one_plus(n), n));
    if (n >= 1) CHECK_FALSE(is_prime_in_gn(P::one_plus(n - 1, -1), n));
  }
  CHECK(is_prime_in_gn(P::one_plus(0, -1), 0));
  // Monomials are units.
  CHECK_FALSE(is_prime_in_gn(P::monomial(q(3, 4), q(2)), 2));
  CHECK_THROWS_AS(is_prime_in_gn(P(), 1), PreconditionViolated);
  CHECK_THROWS_AS(is_prime_in_gn(P::one_plus(4), 3), DepthExceeded);
  // 1 + X^(1/2) stays prime in K[G_2], since y^2 + 1 is irreducible.
  CHECK(is_prime_in_gn(P::one_plus(1), 2));
  // 1 - X^(1/2) = (1 - X^(1/4)) (1 + X^(1/4)) in K[G_2].
  CHECK(is_prime_in_gn(P::one_plus(1, -1), 1));
  CHECK_FALSE(is_prime_in_gn(P::one_plus(1, -1), 2));
}

TEST_CASE("irreducibility examples") {
  CHECK(irreducible_over_q(coeffs({4, 0, 0, 0, 1})) == false);  // y^4 + 4
  CHECK(irreducible_over_q(coeffs({1, 0, 0, 0, 1})));           // y^4 + 1
  CHECK(irreducible_over_q(coeffs({1, 0, -10, 0, 1})));         // splits mod every prime
  CHECK(irreducible_over_q(coeffs({1, 1, 1, 1, 1, 1, 1})));     // 7th cyclotomic
  CHECK_FALSE(irreducible_over_q(coeffs({2, 0, 3, 0, 1})));     // (y^2 + 1)(y^2 + 2)
  CHECK_FALSE(irreducible_over_q(coeffs({1, 2, 1})));           // (y + 1)^2
  CHECK_FALSE(irreducible_over_q(coeffs({0, 0, 1})));
  CHECK_FALSE(irreducible_over_q(coeffs({7})));
  CHECK(irreducible_over_q(coeffs({0, 5})));
  CHECK(irreducible_over_q(coeffs({-2, 0, 0, 1})));             // y^3 - 2
  CHECK_FALSE(irreducible_over_q(coeffs({-8, 0, 0, 1})));       // y^3 - 8
  CHECK(irreducible_over_q({q(1, 2), q(0), q(1, 3)}));
  CHECK_FALSE(irreducible_over_q({q(-1, 4), q(0), q(1)}));      // y^2 - 1/4
  CHECK_THROWS_AS(irreducible_over_q({}), PreconditionViolated);
  // Product of two irreducible quartics that both split into linear and
  // quadratic pieces modulo small primes.
  const std::vector<Integer> a{1, 0, -10, 0, 1}, b{-2, 0, 0, 0, 1};
  const auto ab = int_mul(a, b);
  CHECK_FALSE(irreducible_over_q(std::vector<Rational>(ab.begin(), ab.end())));
}

TEST_CASE("irreducibility agrees with factor search up to degree 8") {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<long> deg(2, 8), small(1, 4);
  int reducible = 0, irreducible = 0;
  for (int i = 0; i < 240; ++i) {
    std::vector<Integer> f;
    if (i % 2 == 0) {
      f = random_int_poly(rng, deg(rng), 3);
    } else {
      const long d1 = small(rng);
      std::uniform_int_distribution<long> rest(1, std::max(1L, 8 - d1));
      f = int_mul(random_int_poly(rng, d1, 2), random_int_poly(rng, rest(rng), 2));
    }
    CAPTURE(i);
    const bool expected = naive_irreducible(f);
    CHECK(irreducible_over_q(std::vector<Rational>(f.begin(), f.end())) == expected);
    (expected ? irreducible : reducible) += 1;
  }
  CHECK(reducible > 60);
  CHECK(irreducible > 30);
}

TEST_CASE("divisibility in K[G_n]") {
  for (int n = 1; n <= 10; ++n)
    for (int m = 0; m < n; ++m) {
      CAPTURE(m);
      CAPTURE(n);
      CHECK_FALSE(divides_in_gn(P::one_plus(n), P::one_plus(m), n));
    }
  const P f({{q(1, 4), q(2)}, {q(-3, 2), q(5)}});
  CHECK(divides_in_gn(f, f, 2));
  CHECK(divides_in_gn(P::one_plus(1), P::one_plus(0, -1), 1));
  CHECK(divides_in_gn(P::one_plus(3), P(), 3));
  CHECK(divides_in_gn(P::monomial(q(-5, 8), q(3)), f, 3));
  CHECK_THROWS_AS(divides_in_gn(P(), f, 2), PreconditionViolated);
  CHECK_THROWS_AS(divides_in_gn(P::one_plus(3), f, 2), DepthExceeded);

  std::mt19937_64 rng(9);
  std::uniform_int_distribution<long> num(-6, 6), den(0, 2), c(-4, 4);
  auto random_poly = [&] {
    P::Terms t;
    for (int i = 0; i < 3; ++i) t[q(num(rng), 1L << den(rng))] = q(c(rng));
    return P(t);
  };
  for (int i = 0; i < 100; ++i) {
    const P a = random_poly(), b = random_poly();
    if (a.is_zero()) continue;
    CHECK(divides_in_gn(a, a * b, 2));
    CHECK(divides_in_gn(a, a * P::monomial(q(num(rng), 4)), 2));
  }
}

TEST_CASE("coprimality in K[G_n]") {
  for (int n = 2; n <= 10; ++n)
    for (int m = 1; m < n; ++m) {
      CAPTURE(m);
      CAPTURE(n);
      CHECK(coprime_in_gn(P::one_plus(n), P::one_plus(m), n));
    }
  CHECK_FALSE(coprime_in_gn(P::one_plus(0, -1), P::one_plus(1), 1));
  CHECK_FALSE(coprime_in_gn(P(), P(), 1));
  CHECK(coprime_in_gn(P(), P::monomial(q(1, 2)), 1));
  CHECK_FALSE(coprime_in_gn(P(), P::one_plus(1), 1));
}

TEST_CASE("telescoping identity") {
  const auto one = telescoping_identity(1);
  REQUIRE(one.factors.size() == 2);
  CHECK(one.factors[0] == P::one_plus(1));
  CHECK(one.factors[1] == P::one_plus(1, -1));
  CHECK(one.holds);
  for (int n = 1; n <= kMaxDepth; ++n) {
    CAPTURE(n);
    const auto r = telescoping_identity(n);
    CHECK(r.holds);
    CHECK(r.product == P::one_plus(0, -1));
    CHECK(r.factors.size() == static_cast<std::size_t>(n + 1));
    if (n <= 10) {
      P left = P::monomial(0);
      for (const auto& f : r.factors) left = left * f;
      CHECK(left == r.product);
    }
  }
  const auto three = telescoping_identity(3);
  for (std::size_t i = 0; i + 1 < three.factors.size(); ++i)
    for (std::size_t j = i + 1; j + 1 < three.factors.size(); ++j)
      CHECK(coprime_in_gn(three.factors[i], three.factors[j], 3));
  CHECK_THROWS_AS(telescoping_identity(0), PreconditionViolated);
  CHECK_THROWS_AS(telescoping_identity(kMaxDepth + 1), DepthExceeded);
}

TEST_CASE("root extension") {
  const auto a = root_extension_check(5, 3, 2);
  CHECK(a.multiplier == 3);
  CHECK(a.value == 5);
  CHECK(a.coefficient == 20);
  CHECK(root_extension_check(7, 1, 0).multiplier == 1);
  CHECK(root_extension_check(1, 6, 1).multiplier == 6);
  CHECK(root_extension_check(1, 6, 1).value == 1);
  CHECK_THROWS_AS(root_extension_check(1, 0, 1), PreconditionViolated);
  for (long b = 1; b <= 30; ++b)
    for (long num = -20; num <= 20; ++num)
      for (int n = 0; n <= 4; ++n) {
        const auto r = root_extension_check(num, b, n);
        CHECK(Rational(r.multiplier) * q(num, b) == Rational(r.value));
        CHECK(r.coefficient == r.value * (1L << n));
      }
}
