#pragma once

// Exact arithmetic in a real quadratic field Q(sqrt D) and dense linear
// algebra over it.

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "modelset/errors.hpp"

namespace modelset {

using Integer = mpz_class;
using Rational = mpq_class;

/// Element a + b*sqrt(D) of Q(sqrt D).
///
/// D is 0 for values built without a field context; such values are purely
/// rational and combine with any field. Two values with distinct nonzero D
/// and nonzero surd parts cannot be combined.
class QF {
 public:
  QF() = default;
  QF(long value) : a_(value) {}  // NOLINT(google-explicit-constructor)
  QF(const Rational& a) : a_(a) {}  // NOLINT(google-explicit-constructor)
  QF(Rational a, Rational b, long D);

  static QF sqrt(long D) { return QF(0, 1, D); }
  static QF rational(long num, long den) { return QF(Rational(num, den)); }

  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }
  long D() const { return D_; }

  bool is_zero() const { return sgn(a_) == 0 && sgn(b_) == 0; }
  bool is_rational() const { return sgn(b_) == 0; }

  /// Sign of the real number a + b*sqrt(D), decided without floating point.
  int sign() const;
  /// Greatest integer not exceeding the real value.
  Integer floor() const;
  Integer ceil() const;
  QF conjugate() const { return QF(a_, -b_, D_); }
  /// a^2 - D b^2.
  Rational norm() const;
  QF abs() const { return sign() < 0 ? -*this : *this; }
  double to_double() const;

  /// Canonical text form, e.g. "3+2√2", "-1/2√2", "1/3".
  std::string str() const;
  /// Parses the text form. `context_D` fixes D for purely rational input and
  /// must match any D written in the string (0 = accept whatever is written).
  static QF parse(std::string_view text, long context_D = 0);

  QF operator-() const { return QF(-a_, -b_, D_); }
  QF& operator+=(const QF& y);
  QF& operator-=(const QF& y);
  QF& operator*=(const QF& y);
  QF& operator/=(const QF& y);

  friend QF operator+(QF x, const QF& y) { return x += y; }
  friend QF operator-(QF x, const QF& y) { return x -= y; }
  friend QF operator*(QF x, const QF& y) { return x *= y; }
  friend QF operator/(QF x, const QF& y) { return x /= y; }

  // Equality is coefficient-wise; D is irrelevant when b = 0.
  friend bool operator==(const QF& x, const QF& y);
  friend std::strong_ordering operator<=>(const QF& x, const QF& y);

 private:
  static long common_D(const QF& x, const QF& y);

  Rational a_;
  Rational b_;
  long D_ = 0;
};

std::ostream& operator<<(std::ostream& os, const QF& x);

inline int sign(const QF& x) { return x.sign(); }

/// Largest rational of the form k/2^bits that is strictly below x.
Rational rational_below(const QF& x, unsigned bits = 20);
/// Smallest rational of the form k/2^bits that is strictly above x.
Rational rational_above(const QF& x, unsigned bits = 20);

/// Square root of a nonnegative rational, bracketed by rationals: returns r
/// with r > 0, r*r < x (requires x > 0).
Rational sqrt_below(const QF& x);
/// Returns r with r*r > x.
Rational sqrt_above(const QF& x);

using QFVector = std::vector<QF>;

QFVector operator+(const QFVector& x, const QFVector& y);
QFVector operator-(const QFVector& x, const QFVector& y);
QFVector operator-(const QFVector& x);
QFVector operator*(const QF& s, const QFVector& x);
QF dot(const QFVector& x, const QFVector& y);
inline QF norm2(const QFVector& x) { return dot(x, x); }
bool is_zero(const QFVector& x);
std::string str(const QFVector& x, std::string_view sep = ",");
std::vector<double> to_double(const QFVector& x);
QFVector zeros(std::size_t n);

/// Dense row-major matrix over Q(sqrt D).
class QFMatrix {
 public:
  QFMatrix() = default;
  QFMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static QFMatrix identity(std::size_t n);
  static QFMatrix from_rows(const std::vector<QFVector>& rows, std::size_t cols = 0);
  static QFMatrix from_columns(const std::vector<QFVector>& cols, std::size_t rows = 0);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  QF& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const QF& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  QFVector row(std::size_t i) const;
  QFVector column(std::size_t j) const;
  std::vector<QFVector> columns() const;
  QFMatrix transpose() const;

  friend QFMatrix operator*(const QFMatrix& x, const QFMatrix& y);
  friend QFVector operator*(const QFMatrix& x, const QFVector& v);
  friend bool operator==(const QFMatrix& x, const QFMatrix& y) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<QF> data_;
};

/// Reduced row echelon form, with the list of pivot columns.
struct RowEchelon {
  QFMatrix R;
  std::vector<std::size_t> pivots;
};

RowEchelon rref(QFMatrix M);
std::size_t rank(const QFMatrix& M);
/// Basis of {v : M v = 0}: one vector per free column of the RREF, with a 1 in
/// that column. Deterministic.
std::vector<QFVector> kernel_basis(const QFMatrix& M);
/// A solution of M x = v (free variables set to zero). Throws NoSolution.
QFVector solve(const QFMatrix& M, const QFVector& v);
std::optional<QFVector> try_solve(const QFMatrix& M, const QFVector& v);
/// Throws SingularMatrix.
QFMatrix inverse(const QFMatrix& M);

/// Matrix whose columns are a basis of the column span of `cols` (pivot
/// columns of the input, in order).
std::vector<QFVector> column_basis(const std::vector<QFVector>& cols, std::size_t dim);
/// Basis of the orthogonal complement (standard inner product) of span(vecs)
/// inside F^dim.
std::vector<QFVector> orthogonal_complement(const std::vector<QFVector>& vecs, std::size_t dim);
/// Whether span(a) is contained in span(b).
bool span_contains(const std::vector<QFVector>& b, const std::vector<QFVector>& a, std::size_t dim);

}  // namespace modelset
