// Polynomial arithmetic over Q and irreducibility over Q.
//
// Binomials a*y^n + b are decided by Capelli's criterion. Other squarefree
// polynomials are factored modulo a small prime (distinct-degree then
// Cantor-Zassenhaus splitting), the factors are Hensel lifted past a
// coefficient bound, and subsets of lifted factors are tested as true
// divisors over Z.

#include "qpoly.hpp"
#include "wkrull/counterexample.hpp"
#include "wkrull/errors.hpp"

#include <algorithm>
#include <cstdint>
#include <random>

namespace wkrull {
namespace detail {

std::pair<QPoly, QPoly> divrem(const QPoly& a, const QPoly& b) {
  if (b.empty() || b.back() == 0) throw PreconditionViolated("polynomial division by zero");
  QPoly r = a;
  trim(r);
  if (r.size() < b.size()) return {{}, r};
  QPoly q(r.size() - b.size() + 1);
  const Rational lead = b.back();
  // Images of dyadic elements are very sparse; skip the zero coefficients.
  std::vector<std::size_t> support;
  for (std::size_t j = 0; j < b.size(); ++j)
    if (b[j] != 0) support.push_back(j);
  for (std::size_t i = q.size(); i-- > 0;) {
    if (r[i + b.size() - 1] == 0) continue;
    Rational c = r[i + b.size() - 1] / lead;
    for (std::size_t j : support) r[i + j] -= c * b[j];
    q[i] = std::move(c);
  }
  r.resize(b.size() - 1);
  trim(r);
  trim(q);
  return {q, r};
}

static void make_monic(QPoly& f) {
  if (f.empty()) return;
  const Rational lead = f.back();
  for (auto& c : f) c /= lead;
}

QPoly gcd(QPoly a, QPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    make_monic(b);
    QPoly r = divrem(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  make_monic(a);
  return a;
}

QPoly derivative(const QPoly& f) {
  QPoly d;
  for (std::size_t i = 1; i < f.size(); ++i) d.push_back(f[i] * static_cast<long>(i));
  trim(d);
  return d;
}

ZPoly primitive_part(const QPoly& f) {
  Integer den = 1;
  for (const auto& c : f) den = lcm(den, Integer(c.get_den()));
  ZPoly z;
  for (const auto& c : f) z.push_back(c.get_num() * (den / c.get_den()));
  trim(z);
  Integer g = 0;
  for (const auto& c : z) g = gcd(g, c);
  if (g != 0)
    for (auto& c : z) c /= g;
  if (!z.empty() && z.back() < 0)
    for (auto& c : z) c = -c;
  return z;
}

} // namespace detail

namespace {

using detail::degree;
using detail::QPoly;
using detail::trim;
using detail::ZPoly;
using u64 = std::uint64_t;
using FPoly = std::vector<u64>;

// Above this degree only binomials are decided.
constexpr long kFactorDegreeCap = 256;
// Subsets of at most this many modular factors are searched.
constexpr std::size_t kRecombinationCap = 16;
// Number of good primes compared by their factor degree patterns.
constexpr int kPrimeTrials = 5;

// ---------------------------------------------------------------- Capelli

bool exact_root(const Integer& x, unsigned long k) {
  Integer r;
  return mpz_root(r.get_mpz_t(), x.get_mpz_t(), k) != 0;
}

// c is a k-th power in Q.
bool rational_power(const Rational& c, unsigned long k) {
  if (c < 0) return k % 2 == 1 && rational_power(-c, k);
  return exact_root(c.get_num(), k) && exact_root(c.get_den(), k);
}

// y^n - c is irreducible over Q iff c is not a p-th power for any prime p
// dividing n, and c is not of the form -4 d^4 when 4 divides n.
bool binomial_irreducible(const Rational& c, long n) {
  long m = n;
  for (long q = 2; q * q <= m; ++q) {
    if (m % q != 0) continue;
    if (rational_power(c, static_cast<unsigned long>(q))) return false;
    while (m % q == 0) m /= q;
  }
  if (m > 1 && rational_power(c, static_cast<unsigned long>(m))) return false;
  if (n % 4 == 0) {
    const Rational d = -c / 4;
    if (d > 0 && rational_power(d, 4)) return false;
  }
  return true;
}

// ------------------------------------------------------ polynomials mod p

struct Fp {
  u64 p;

  u64 mul(u64 a, u64 b) const { return a * b % p; }
  u64 add(u64 a, u64 b) const { return (a + b) % p; }
  u64 sub(u64 a, u64 b) const { return (a + p - b) % p; }
  u64 pow(u64 a, u64 e) const {
    u64 r = 1;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  u64 inv(u64 a) const { return pow(a, p - 2); }

  FPoly reduce(const ZPoly& f) const {
    FPoly out;
    for (const auto& c : f) out.push_back(mpz_fdiv_ui(c.get_mpz_t(), p));
    trim(out);
    return out;
  }
  FPoly mul(const FPoly& a, const FPoly& b) const {
    if (a.empty() || b.empty()) return {};
    FPoly out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] == 0) continue;
      for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = (out[i + j] + a[i] * b[j]) % p;
    }
    trim(out);
    return out;
  }
  FPoly sub(FPoly a, const FPoly& b) const {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] = sub(a[i], b[i]);
    trim(a);
    return a;
  }
  void divrem(const FPoly& a, const FPoly& b, FPoly& q, FPoly& r) const {
    r = a;
    trim(r);
    q.clear();
    if (r.size() < b.size()) return;
    q.assign(r.size() - b.size() + 1, 0);
    const u64 li = inv(b.back());
    for (std::size_t i = q.size(); i-- > 0;) {
      const u64 c = mul(r[i + b.size() - 1], li);
      q[i] = c;
      if (c == 0) continue;
      for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = sub(r[i + j], mul(c, b[j]));
    }
    r.resize(b.size() - 1);
    trim(r);
    trim(q);
  }
  FPoly mod(const FPoly& a, const FPoly& b) const {
    FPoly q, r;
    divrem(a, b, q, r);
    return r;
  }
  FPoly quo(const FPoly& a, const FPoly& b) const {
    FPoly q, r;
    divrem(a, b, q, r);
    return q;
  }
  FPoly monic(FPoly f) const {
    if (f.empty()) return f;
    const u64 li = inv(f.back());
    for (auto& c : f) c = mul(c, li);
    return f;
  }
  FPoly gcd(FPoly a, FPoly b) const {
    while (!b.empty()) {
      FPoly r = mod(a, b);
      a = std::move(b);
      b = std::move(r);
    }
    return monic(a);
  }
  FPoly derivative(const FPoly& f) const {
    FPoly d;
    for (std::size_t i = 1; i < f.size(); ++i) d.push_back(mul(f[i], i % p));
    trim(d);
    return d;
  }
  FPoly powmod(FPoly base, const Integer& e, const FPoly& m) const {
    FPoly r{1};
    base = mod(base, m);
    for (std::size_t bit = mpz_sizeinbase(e.get_mpz_t(), 2); bit-- > 0;) {
      r = mod(mul(r, r), m);
      if (mpz_tstbit(e.get_mpz_t(), bit)) r = mod(mul(r, base), m);
    }
    return r;
  }
  // s with s*a = 1 mod b, deg s < deg b, for coprime a and b.
  FPoly inverse_mod(const FPoly& a, const FPoly& b) const {
    FPoly r0 = mod(a, b), r1 = b, s0{1}, s1;
    while (!r1.empty()) {
      FPoly q, r;
      divrem(r0, r1, q, r);
      FPoly s = sub(s0, mul(q, s1));
      r0 = std::move(r1);
      r1 = std::move(r);
      s0 = std::move(s1);
      s1 = std::move(s);
    }
    const u64 li = inv(r0.back());
    for (auto& c : s0) c = mul(c, li);
    return mod(s0, b);
  }
};

// Distinct-degree factorization of a monic squarefree polynomial: pairs of
// (product of all irreducible factors of degree d, d).
std::vector<std::pair<FPoly, long>> distinct_degree(const Fp& F, FPoly f) {
  std::vector<std::pair<FPoly, long>> out;
  const FPoly x{0, 1};
  FPoly h = x;
  long d = 0;
  while (degree(f) >= 2 * (d + 1)) {
    ++d;
    h = F.powmod(h, Integer(static_cast<unsigned long>(F.p)), f);
    FPoly g = F.gcd(f, F.sub(h, x));
    if (degree(g) > 0) {
      f = F.quo(f, g);
      h = F.mod(h, f);
      out.emplace_back(std::move(g), d);
    }
  }
  if (degree(f) > 0) out.emplace_back(f, degree(f));
  return out;
}

// Splits a monic product of irreducible factors of degree d (odd p).
void equal_degree(const Fp& F, const FPoly& g, long d, std::mt19937_64& rng,
                  std::vector<FPoly>& out) {
  if (degree(g) == d) {
    out.push_back(g);
    return;
  }
  Integer e;
  mpz_ui_pow_ui(e.get_mpz_t(), F.p, static_cast<unsigned long>(d));
  e = (e - 1) / 2;
  std::uniform_int_distribution<u64> coeff(0, F.p - 1);
  while (true) {
    FPoly a(static_cast<std::size_t>(degree(g)));
    for (auto& c : a) c = coeff(rng);
    trim(a);
    if (degree(a) < 1) continue;
    FPoly b = F.sub(F.powmod(a, e, g), FPoly{1});
    FPoly h = F.gcd(b, g);
    if (degree(h) > 0 && degree(h) < degree(g)) {
      equal_degree(F, h, d, rng, out);
      equal_degree(F, F.quo(g, h), d, rng, out);
      return;
    }
  }
}

// ------------------------------------------------- polynomials mod m in Z

Integer residue(const Integer& c, const Integer& m) {
  Integer r = c % m;
  if (r < 0) r += m;
  return r;
}

ZPoly zmod(ZPoly f, const Integer& m) {
  for (auto& c : f) c = residue(c, m);
  trim(f);
  return f;
}

ZPoly zmul(const ZPoly& a, const ZPoly& b, const Integer& m) {
  if (a.empty() || b.empty()) return {};
  ZPoly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return zmod(std::move(out), m);
}

ZPoly zadd(ZPoly a, const ZPoly& b, const Integer& m) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] += b[i];
  return zmod(std::move(a), m);
}

ZPoly zsub(ZPoly a, const ZPoly& b, const Integer& m) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  return zmod(std::move(a), m);
}

// Division by a monic b modulo m.
void zdivrem_monic(const ZPoly& a, const ZPoly& b, const Integer& m, ZPoly& q, ZPoly& r) {
  r = zmod(a, m);
  q.clear();
  if (r.size() < b.size()) return;
  q.assign(r.size() - b.size() + 1, 0);
  for (std::size_t i = q.size(); i-- > 0;) {
    const Integer c = r[i + b.size() - 1];
    q[i] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = residue(r[i + j] - c * b[j], m);
  }
  r.resize(b.size() - 1);
  trim(r);
  trim(q);
}

ZPoly lift_poly(const FPoly& f) {
  ZPoly z;
  for (u64 c : f) z.emplace_back(static_cast<unsigned long>(c));
  return z;
}

// One quadratic Hensel step: from f = g h, s g + t h = 1 mod m to the same
// relations mod m^2, with h monic.
void hensel_step(const ZPoly& f, ZPoly& g, ZPoly& h, ZPoly& s, ZPoly& t, const Integer& m2) {
  const ZPoly e = zsub(f, zmul(g, h, m2), m2);
  ZPoly q, r;
  zdivrem_monic(zmul(s, e, m2), h, m2, q, r);
  const ZPoly g2 = zadd(zadd(g, zmul(t, e, m2), m2), zmul(q, g, m2), m2);
  const ZPoly h2 = zadd(h, r, m2);
  const ZPoly b = zsub(zadd(zmul(s, g2, m2), zmul(t, h2, m2), m2), ZPoly{1}, m2);
  ZPoly c, d;
  zdivrem_monic(zmul(s, b, m2), h2, m2, c, d);
  s = zsub(s, d, m2);
  t = zsub(zsub(t, zmul(t, b, m2), m2), zmul(c, g2, m2), m2);
  g = g2;
  h = h2;
}

// Lifts f = lc(f) * prod(factors) mod p to monic factors mod P = p^(2^j).
void lift_all(const Fp& F, const ZPoly& f, const std::vector<FPoly>& factors, const Integer& P,
              std::vector<ZPoly>& out) {
  if (factors.size() == 1) {
    Integer li;
    mpz_invert(li.get_mpz_t(), f.back().get_mpz_t(), P.get_mpz_t());
    ZPoly u = f;
    for (auto& c : u) c = residue(c * li, P);
    out.push_back(std::move(u));
    return;
  }
  const std::size_t half = factors.size() / 2;
  const std::vector<FPoly> left(factors.begin(), factors.begin() + static_cast<long>(half));
  const std::vector<FPoly> right(factors.begin() + static_cast<long>(half), factors.end());
  FPoly g0{mpz_fdiv_ui(f.back().get_mpz_t(), F.p)};
  for (const auto& u : left) g0 = F.mul(g0, u);
  FPoly h0{1};
  for (const auto& u : right) h0 = F.mul(h0, u);
  const FPoly s0 = F.inverse_mod(g0, h0);
  const FPoly t0 = F.quo(F.sub(FPoly{1}, F.mul(s0, g0)), h0);

  ZPoly g = lift_poly(g0), h = lift_poly(h0), s = lift_poly(s0), t = lift_poly(t0);
  Integer m = F.p;
  while (m < P) {
    m *= m;
    hensel_step(zmod(f, m), g, h, s, t, m);
  }
  lift_all(F, g, left, P, out);
  lift_all(F, h, right, P, out);
}

// Exact division test over Z.
bool zdivides(const ZPoly& g, const ZPoly& f) {
  ZPoly r = f;
  if (r.size() < g.size()) return false;
  for (std::size_t i = r.size() - g.size() + 1; i-- > 0;) {
    const Integer& top = r[i + g.size() - 1];
    if (top == 0) continue;
    if (!mpz_divisible_p(top.get_mpz_t(), g.back().get_mpz_t())) return false;
    const Integer c = top / g.back();
    for (std::size_t j = 0; j < g.size(); ++j) r[i + j] -= c * g[j];
  }
  return std::all_of(r.begin(), r.end(), [](const Integer& c) { return c == 0; });
}

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 q = 2; q * q <= n; ++q)
    if (n % q == 0) return false;
  return true;
}

// Degrees d such that some product of the given factor degrees has degree d.
std::vector<bool> attainable_degrees(const std::vector<long>& degs, long n) {
  std::vector<bool> ok(static_cast<std::size_t>(n + 1), false);
  ok[0] = true;
  for (long d : degs)
    for (long k = n; k >= d; --k)
      if (ok[static_cast<std::size_t>(k - d)]) ok[static_cast<std::size_t>(k)] = true;
  return ok;
}

// f primitive, squarefree, degree >= 2, nonzero constant term.
bool zassenhaus_irreducible(const ZPoly& f) {
  const long n = degree(f);
  const Integer& lc = f.back();

  // Pick the good prime with the fewest modular factors, intersecting the
  // attainable factor degrees along the way.
  std::vector<bool> common(static_cast<std::size_t>(n + 1), true);
  u64 best_p = 0;
  std::vector<std::pair<FPoly, long>> best_ddf;
  std::size_t best_count = 0;
  int trials = 0;
  for (u64 p = 3; trials < kPrimeTrials; p += 2) {
    if (!is_prime(p) || mpz_divisible_ui_p(lc.get_mpz_t(), p)) continue;
    const Fp F{p};
    const FPoly fp = F.monic(F.reduce(f));
    if (degree(F.gcd(fp, F.derivative(fp))) > 0) continue;
    ++trials;
    auto ddf = distinct_degree(F, fp);
    std::vector<long> degs;
    for (const auto& [g, d] : ddf)
      for (long k = 0; k < degree(g) / d; ++k) degs.push_back(d);
    if (degs.size() == 1) return true;
    const auto ok = attainable_degrees(degs, n);
    for (long k = 1; k < n; ++k) common[static_cast<std::size_t>(k)] = common[static_cast<std::size_t>(k)] && ok[static_cast<std::size_t>(k)];
    if (best_p == 0 || degs.size() < best_count) {
      best_p = p;
      best_ddf = std::move(ddf);
      best_count = degs.size();
    }
  }
  bool split_possible = false;
  for (long k = 1; k < n; ++k) split_possible = split_possible || common[static_cast<std::size_t>(k)];
  if (!split_possible) return true;
  if (best_count > kRecombinationCap)
    throw BoundExceeded("too many modular factors for recombination",
                        static_cast<std::int64_t>(kRecombinationCap));

  const Fp F{best_p};
  std::mt19937_64 rng(best_p);
  std::vector<FPoly> factors;
  for (const auto& [g, d] : best_ddf) equal_degree(F, g, d, rng, factors);
  std::sort(factors.begin(), factors.end());

  // Coefficients of lc * (factor / lc(factor)) are bounded by
  // |lc| 2^n |f|_2; lift past twice that.
  Integer norm2 = 0;
  for (const auto& c : f) norm2 += c * c;
  Integer bound;
  mpz_sqrt(bound.get_mpz_t(), norm2.get_mpz_t());
  bound += 1;
  mpz_mul_2exp(bound.get_mpz_t(), bound.get_mpz_t(), static_cast<mp_bitcnt_t>(n));
  bound *= abs(lc);
  Integer P = best_p;
  while (P <= 2 * bound) P *= P;

  std::vector<ZPoly> lifted;
  lift_all(F, zmod(f, P), factors, P, lifted);

  const Integer halfP = P / 2;
  const std::size_t r = lifted.size();
  for (std::size_t k = 1; 2 * k <= r; ++k) {
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    while (true) {
      ZPoly g{residue(lc, P)};
      for (std::size_t i : idx) g = zmul(g, lifted[i], P);
      for (auto& c : g)
        if (c > halfP) c -= P;
      trim(g);
      QPoly gq(g.begin(), g.end());
      const ZPoly cand = detail::primitive_part(gq);
      if (degree(cand) > 0 && zdivides(cand, f)) return false;
      std::size_t i = k;
      while (i > 0 && idx[i - 1] == r - k + i - 1) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return true;
}

} // namespace

bool irreducible_over_q(const std::vector<Rational>& coeffs) {
  QPoly f = coeffs;
  trim(f);
  if (f.empty()) throw PreconditionViolated("irreducibility of the zero polynomial");
  const long n = degree(f);
  if (n == 0) return false;
  if (n == 1) return true;
  if (f[0] == 0) return false;
  const auto nonzero = std::count_if(f.begin(), f.end(), [](const Rational& c) { return c != 0; });
  if (nonzero == 2) return binomial_irreducible(-f[0] / f.back(), n);
  if (degree(detail::gcd(f, detail::derivative(f))) > 0) return false;
  if (n > kFactorDegreeCap)
    throw BoundExceeded("polynomial degree exceeds the factorization limit", kFactorDegreeCap);
  return zassenhaus_irreducible(detail::primitive_part(f));
}

} // namespace wkrull
