#pragma once

// Arbitrary-precision integer vectors and matrices.

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <ostream>
#include <string>
#include <vector>

namespace wkrull {

using Integer = mpz_class;
using Rational = mpq_class;

/// A vector in Z^d. Comparison is lexicographic; vectors of different length
/// order by length first.
class IntVector {
public:
  IntVector() = default;
  explicit IntVector(std::size_t n) : coords_(n, 0) {}
  IntVector(std::initializer_list<long> xs);
  explicit IntVector(std::vector<Integer> xs) : coords_(std::move(xs)) {}

  std::size_t size() const noexcept { return coords_.size(); }
  bool empty() const noexcept { return coords_.empty(); }

  const Integer& operator[](std::size_t i) const { return coords_[i]; }
  Integer& operator[](std::size_t i) { return coords_[i]; }

  auto begin() const noexcept { return coords_.begin(); }
  auto end() const noexcept { return coords_.end(); }
  auto begin() noexcept { return coords_.begin(); }
  auto end() noexcept { return coords_.end(); }

  const std::vector<Integer>& coords() const noexcept { return coords_; }

  bool is_zero() const;

  IntVector& operator+=(const IntVector& o);
  IntVector& operator-=(const IntVector& o);

  friend IntVector operator+(IntVector a, const IntVector& b) { return a += b; }
  friend IntVector operator-(IntVector a, const IntVector& b) { return a -= b; }
  friend IntVector operator-(IntVector a);
  friend IntVector operator*(const Integer& k, IntVector a);

  friend bool operator==(const IntVector& a, const IntVector& b) {
    return a.coords_ == b.coords_;
  }
  friend bool operator!=(const IntVector& a, const IntVector& b) {
    return !(a == b);
  }
  friend bool operator<(const IntVector& a, const IntVector& b);
  friend bool operator>(const IntVector& a, const IntVector& b) { return b < a; }
  friend bool operator<=(const IntVector& a, const IntVector& b) {
    return !(b < a);
  }
  friend bool operator>=(const IntVector& a, const IntVector& b) {
    return !(a < b);
  }

  /// "[1,-2,3]"
  std::string str() const;

private:
  std::vector<Integer> coords_;
};

std::ostream& operator<<(std::ostream& os, const IntVector& v);

Integer dot(const IntVector& a, const IntVector& b);

/// gcd of the absolute values of the entries (0 for the zero vector).
Integer content(const IntVector& v);

/// v divided by its content; the zero vector is returned unchanged.
IntVector primitive(const IntVector& v);

/// Rectangular integer matrix stored by rows.
class IntMatrix {
public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);
  explicit IntMatrix(std::vector<IntVector> rows);
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_.size(); }
  std::size_t cols() const noexcept { return cols_; }

  const Integer& operator()(std::size_t i, std::size_t j) const {
    return rows_[i][j];
  }
  Integer& operator()(std::size_t i, std::size_t j) { return rows_[i][j]; }

  const IntVector& row(std::size_t i) const { return rows_[i]; }
  const std::vector<IntVector>& row_vectors() const noexcept { return rows_; }
  IntVector column(std::size_t j) const;

  IntMatrix transpose() const;

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend IntVector operator*(const IntMatrix& a, const IntVector& v);
  friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
    return a.cols_ == b.cols_ && a.rows_ == b.rows_;
  }

  /// Exact determinant by fraction-free elimination (square matrices only).
  Integer determinant() const;

  /// Rank over the rationals.
  std::size_t rank() const;

  void swap_rows(std::size_t i, std::size_t j) { std::swap(rows_[i], rows_[j]); }
  void swap_cols(std::size_t i, std::size_t j);

private:
  std::size_t cols_ = 0;
  std::vector<IntVector> rows_;
};

std::ostream& operator<<(std::ostream& os, const IntMatrix& m);

/// Solves A x = b over the rationals for a matrix of full column rank.
/// Returns false when the system is inconsistent.
bool solve_rational(const IntMatrix& a, const IntVector& b,
                    std::vector<Rational>& x);

/// Integer floor/ceil of a rational.
Integer floor_div(const Rational& q);
Integer ceil_div(const Rational& q);

/// Conversion to a machine word; throws OverflowError when it does not fit
/// comfortably in the enumeration kernels.
std::int64_t to_small(const Integer& z);

} // namespace wkrull
