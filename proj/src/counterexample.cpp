#include "wkrull/counterexample.hpp"

#include "qpoly.hpp"
#include "wkrull/errors.hpp"

#include <algorithm>
#include <sstream>

namespace wkrull {

namespace {

// log2 of a power of two, -1 otherwise.
int log2_exact(const Integer& x) {
  if (x <= 0 || mpz_popcount(x.get_mpz_t()) != 1) return -1;
  return static_cast<int>(mpz_scan1(x.get_mpz_t(), 0));
}

void check_depth(int n) {
  if (n < 0 || n > kMaxDepth)
    throw DepthExceeded("depth " + std::to_string(n) + " outside [0, " +
                        std::to_string(kMaxDepth) + "]");
}

Rational two_pow_neg(int k) {
  Integer den;
  mpz_ui_pow_ui(den.get_mpz_t(), 2, static_cast<unsigned long>(k));
  return Rational(Integer(1), den);
}

void accumulate(DyadicLaurentPoly::Terms& t, const Rational& e, const Rational& c) {
  auto [it, inserted] = t.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) t.erase(it);
  }
}

} // namespace

DyadicLaurentPoly::DyadicLaurentPoly(const Terms& terms) {
  for (const auto& [exp, coeff] : terms) {
    Rational e = exp, c = coeff;
    e.canonicalize();
    c.canonicalize();
    if (log2_exact(e.get_den()) < 0)
      throw PreconditionViolated("exponent " + e.get_str() + " is not dyadic");
    if (c != 0) accumulate(terms_, e, c);
  }
}

DyadicLaurentPoly DyadicLaurentPoly::monomial(const Rational& e, const Rational& c) {
  return DyadicLaurentPoly(Terms{{e, c}});
}

DyadicLaurentPoly DyadicLaurentPoly::one_plus(int k, int s) {
  if (k < 0) throw PreconditionViolated("negative depth");
  return DyadicLaurentPoly(Terms{{Rational(0), Rational(1)}, {two_pow_neg(k), Rational(s)}});
}

int DyadicLaurentPoly::depth() const {
  int d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, log2_exact(e.get_den()));
  return d;
}

std::string DyadicLaurentPoly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << c.get_str() << "*X^(" << e.get_str() << ")";
  }
  return os.str();
}

DyadicLaurentPoly operator+(const DyadicLaurentPoly& a, const DyadicLaurentPoly& b) {
  DyadicLaurentPoly::Terms t = a.terms();
  for (const auto& [e, c] : b.terms()) accumulate(t, e, c);
  return DyadicLaurentPoly(t);
}

DyadicLaurentPoly operator-(const DyadicLaurentPoly& a, const DyadicLaurentPoly& b) {
  DyadicLaurentPoly::Terms t = a.terms();
  for (const auto& [e, c] : b.terms()) accumulate(t, e, -c);
  return DyadicLaurentPoly(t);
}

DyadicLaurentPoly operator*(const DyadicLaurentPoly& a, const DyadicLaurentPoly& b) {
  DyadicLaurentPoly::Terms t;
  for (const auto& [ea, ca] : a.terms())
    for (const auto& [eb, cb] : b.terms()) accumulate(t, ea + eb, ca * cb);
  return DyadicLaurentPoly(t);
}

UnivariateImage to_univariate(const DyadicLaurentPoly& f, int n) {
  check_depth(n);
  if (f.depth() > n)
    throw DepthExceeded("element of depth " + std::to_string(f.depth()) + " is not in G_" +
                        std::to_string(n));
  UnivariateImage img;
  if (f.is_zero()) return img;
  Integer scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 2, static_cast<unsigned long>(n));
  auto exponent = [&](const Rational& e) {
    const Rational y = e * scale;
    return to_small(Integer(y.get_num()));
  };
  img.shift = exponent(f.terms().begin()->first);
  const std::int64_t top = exponent(f.terms().rbegin()->first);
  img.coeffs.assign(static_cast<std::size_t>(top - img.shift + 1), Rational(0));
  for (const auto& [e, c] : f.terms())
    img.coeffs[static_cast<std::size_t>(exponent(e) - img.shift)] = c;
  return img;
}

bool is_prime_in_gn(const DyadicLaurentPoly& f, int n) {
  if (f.is_zero()) throw PreconditionViolated("zero is not a prime element");
  return irreducible_over_q(to_univariate(f, n).coeffs);
}

// Monomials are units and the images have nonzero constant terms, so
// divisibility in Q[y, 1/y] is divisibility of the images in Q[y].
bool divides_in_gn(const DyadicLaurentPoly& a, const DyadicLaurentPoly& b, int n) {
  if (a.is_zero()) throw PreconditionViolated("division by zero");
  const auto ia = to_univariate(a, n);
  const auto ib = to_univariate(b, n);
  if (ib.coeffs.empty()) return true;
  return detail::divrem(ib.coeffs, ia.coeffs).second.empty();
}

bool coprime_in_gn(const DyadicLaurentPoly& a, const DyadicLaurentPoly& b, int n) {
  const auto ia = to_univariate(a, n);
  const auto ib = to_univariate(b, n);
  return detail::degree(detail::gcd(ia.coeffs, ib.coeffs)) == 0;
}

TelescopingResult telescoping_identity(int n) {
  if (n < 1) throw PreconditionViolated("telescoping identity needs n >= 1");
  check_depth(n);
  TelescopingResult res;
  for (int k = 1; k <= n; ++k) res.factors.push_back(DyadicLaurentPoly::one_plus(k));
  res.factors.push_back(DyadicLaurentPoly::one_plus(n, -1));
  // Right to left, each partial product is 1 - X^(1/2^k).
  res.product = DyadicLaurentPoly::monomial(Rational(0));
  for (auto it = res.factors.rbegin(); it != res.factors.rend(); ++it)
    res.product = *it * res.product;
  res.holds = res.product == DyadicLaurentPoly::one_plus(0, -1);
  return res;
}

RootExtension root_extension_check(const Integer& numerator, const Integer& denominator, int n) {
  if (denominator < 1) throw PreconditionViolated("denominator must be positive");
  check_depth(n);
  RootExtension r;
  r.multiplier = denominator;
  Rational q(numerator, denominator);
  q.canonicalize();
  const Rational v = Rational(r.multiplier) * q;
  r.value = v.get_num();
  if (v.get_den() != 1) throw Error("internal: multiple of a/b is not an integer");
  mpz_mul_2exp(r.coefficient.get_mpz_t(), r.value.get_mpz_t(), static_cast<mp_bitcnt_t>(n));
  return r;
}

} // namespace wkrull
