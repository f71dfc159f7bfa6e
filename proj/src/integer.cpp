#include "wkrull/integer.hpp"

#include "wkrull/errors.hpp"

#include <algorithm>
#include <sstream>

namespace wkrull {

IntVector::IntVector(std::initializer_list<long> xs) {
  coords_.reserve(xs.size());
  for (long x : xs) coords_.emplace_back(x);
}

bool IntVector::is_zero() const {
  return std::all_of(coords_.begin(), coords_.end(),
                     [](const Integer& z) { return sgn(z) == 0; });
}

IntVector& IntVector::operator+=(const IntVector& o) {
  if (o.size() != size()) throw DimensionMismatch("vector length mismatch");
  for (std::size_t i = 0; i < size(); ++i) coords_[i] += o.coords_[i];
  return *this;
}

IntVector& IntVector::operator-=(const IntVector& o) {
  if (o.size() != size()) throw DimensionMismatch("vector length mismatch");
  for (std::size_t i = 0; i < size(); ++i) coords_[i] -= o.coords_[i];
  return *this;
}

IntVector operator-(IntVector a) {
  for (auto& z : a.coords_) z = -z;
  return a;
}

IntVector operator*(const Integer& k, IntVector a) {
  for (auto& z : a.coords_) z *= k;
  return a;
}

bool operator<(const IntVector& a, const IntVector& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (std::size_t i = 0; i < a.size(); ++i) {
    int c = cmp(a.coords_[i], b.coords_[i]);
    if (c != 0) return c < 0;
  }
  return false;
}

std::string IntVector::str() const {
  std::string out = "[";
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (i) out += ',';
    out += coords_[i].get_str();
  }
  out += ']';
  return out;
}

std::ostream& operator<<(std::ostream& os, const IntVector& v) {
  return os << v.str();
}

Integer dot(const IntVector& a, const IntVector& b) {
  if (a.size() != b.size()) throw DimensionMismatch("vector length mismatch");
  Integer s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Integer content(const IntVector& v) {
  Integer g = 0;
  for (const auto& z : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), z.get_mpz_t());
  return g;
}

IntVector primitive(const IntVector& v) {
  Integer g = content(v);
  if (g == 0 || g == 1) return v;
  IntVector out = v;
  for (auto& z : out) z /= g;
  return out;
}

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : cols_(cols), rows_(rows, IntVector(cols)) {}

IntMatrix::IntMatrix(std::vector<IntVector> rows) : rows_(std::move(rows)) {
  cols_ = rows_.empty() ? 0 : rows_.front().size();
  for (const auto& r : rows_)
    if (r.size() != cols_) throw DimensionMismatch("ragged matrix rows");
}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  for (const auto& r : rows) rows_.emplace_back(r);
  cols_ = rows_.empty() ? 0 : rows_.front().size();
  for (const auto& r : rows_)
    if (r.size() != cols_) throw DimensionMismatch("ragged matrix rows");
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntVector IntMatrix::column(std::size_t j) const {
  IntVector c(rows());
  for (std::size_t i = 0; i < rows(); ++i) c[i] = rows_[i][j];
  return c;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows());
  for (std::size_t i = 0; i < rows(); ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = rows_[i][j];
  return t;
}

void IntMatrix::swap_cols(std::size_t i, std::size_t j) {
  for (auto& r : rows_) std::swap(r[i], r[j]);
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) throw DimensionMismatch("matrix product shape");
  IntMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (sgn(a(i, k)) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

IntVector operator*(const IntMatrix& a, const IntVector& v) {
  if (a.cols() != v.size()) throw DimensionMismatch("matrix-vector shape");
  IntVector out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) out[i] = dot(a.row(i), v);
  return out;
}

Integer IntMatrix::determinant() const {
  if (rows() != cols_) throw DimensionMismatch("determinant of non-square");
  std::size_t n = rows();
  if (n == 0) return 1;
  std::vector<IntVector> m = rows_;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (sgn(m[k][k]) == 0) {
      std::size_t p = k + 1;
      while (p < n && sgn(m[p][k]) == 0) ++p;
      if (p == n) return 0;
      std::swap(m[k], m[p]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer t = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        m[i][j] = t;
      }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

std::size_t IntMatrix::rank() const {
  std::vector<std::vector<Rational>> m(rows(), std::vector<Rational>(cols_));
  for (std::size_t i = 0; i < rows(); ++i)
    for (std::size_t j = 0; j < cols_; ++j) m[i][j] = rows_[i][j];
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols_ && r < rows(); ++c) {
    std::size_t p = r;
    while (p < rows() && sgn(m[p][c]) == 0) ++p;
    if (p == rows()) continue;
    std::swap(m[r], m[p]);
    for (std::size_t i = r + 1; i < rows(); ++i) {
      if (sgn(m[i][c]) == 0) continue;
      Rational f = m[i][c] / m[r][c];
      for (std::size_t j = c; j < cols_; ++j) m[i][j] -= f * m[r][j];
    }
    ++r;
  }
  return r;
}

std::ostream& operator<<(std::ostream& os, const IntMatrix& m) {
  os << '[';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (i) os << ',';
    os << m.row(i);
  }
  return os << ']';
}

bool solve_rational(const IntMatrix& a, const IntVector& b,
                    std::vector<Rational>& x) {
  std::size_t n = a.rows(), k = a.cols();
  if (b.size() != n) throw DimensionMismatch("solve: rhs length");
  std::vector<std::vector<Rational>> m(n, std::vector<Rational>(k + 1));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < k; ++j) m[i][j] = a(i, j);
    m[i][k] = b[i];
  }
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < k && r < n; ++c) {
    std::size_t p = r;
    while (p < n && sgn(m[p][c]) == 0) ++p;
    if (p == n) continue;
    std::swap(m[r], m[p]);
    Rational inv = 1 / m[r][c];
    for (std::size_t j = c; j <= k; ++j) m[r][j] *= inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == r || sgn(m[i][c]) == 0) continue;
      Rational f = m[i][c];
      for (std::size_t j = c; j <= k; ++j) m[i][j] -= f * m[r][j];
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < n; ++i)
    if (sgn(m[i][k]) != 0) return false;
  if (r != k) throw DimensionMismatch("solve: matrix lacks full column rank");
  x.assign(k, 0);
  for (std::size_t i = 0; i < r; ++i) x[pivot_col[i]] = m[i][k];
  return true;
}

Integer floor_div(const Rational& q) {
  Integer out;
  mpz_fdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return out;
}

Integer ceil_div(const Rational& q) {
  Integer out;
  mpz_cdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return out;
}

std::int64_t to_small(const Integer& z) {
  // Products of two coordinates must stay far from int64 overflow.
  static const Integer limit = Integer(1) << 30;
  if (abs(z) > limit)
    throw OverflowError("coordinate " + z.get_str() +
                        " exceeds the enumeration range");
  return z.get_si();
}

} // namespace wkrull
