#include "modelset/qfield.hpp"

#include <cctype>
#include <cmath>
#include <ostream>
#include <sstream>

namespace modelset {

namespace {

bool is_squarefree(long D) {
  for (long p = 2; p * p <= D; ++p) {
    if (D % (p * p) == 0) return false;
  }
  return true;
}

Integer floor_rational(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

}  // namespace

QF::QF(Rational a, Rational b, long D) : a_(std::move(a)), b_(std::move(b)), D_(D) {
  a_.canonicalize();
  b_.canonicalize();
  if (D_ != 0 && (D_ < 2 || !is_squarefree(D_))) {
    throw ValidationError("field discriminant must be a squarefree integer >= 2, got " +
                          std::to_string(D_));
  }
  if (D_ == 0 && sgn(b_) != 0) {
    throw ValidationError("surd coefficient given without a field discriminant");
  }
}

long QF::common_D(const QF& x, const QF& y) {
  if (x.D_ == y.D_) return x.D_;
  if (x.D_ == 0) return y.D_;
  if (y.D_ == 0) return x.D_;
  if (sgn(x.b_) == 0) return y.D_;
  if (sgn(y.b_) == 0) return x.D_;
  throw FieldMismatch("cannot combine elements of Q(sqrt " + std::to_string(x.D_) +
                      ") and Q(sqrt " + std::to_string(y.D_) + ")");
}

QF& QF::operator+=(const QF& y) {
  D_ = common_D(*this, y);
  a_ += y.a_;
  b_ += y.b_;
  return *this;
}

QF& QF::operator-=(const QF& y) {
  D_ = common_D(*this, y);
  a_ -= y.a_;
  b_ -= y.b_;
  return *this;
}

QF& QF::operator*=(const QF& y) {
  D_ = common_D(*this, y);
  if (sgn(b_) == 0 && sgn(y.b_) == 0) {
    a_ *= y.a_;
    return *this;
  }
  Rational na = a_ * y.a_ + Rational(D_) * b_ * y.b_;
  Rational nb = a_ * y.b_ + b_ * y.a_;
  a_ = std::move(na);
  b_ = std::move(nb);
  return *this;
}

QF& QF::operator/=(const QF& y) {
  if (y.is_zero()) throw DivisionByZero();
  D_ = common_D(*this, y);
  if (sgn(y.b_) == 0) {
    a_ /= y.a_;
    b_ /= y.a_;
    return *this;
  }
  Rational n = y.norm();
  *this *= y.conjugate();
  a_ /= n;
  b_ /= n;
  return *this;
}

bool operator==(const QF& x, const QF& y) { return x.a_ == y.a_ && x.b_ == y.b_; }

std::strong_ordering operator<=>(const QF& x, const QF& y) {
  int s = (x - y).sign();
  if (s < 0) return std::strong_ordering::less;
  if (s > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

Rational QF::norm() const { return a_ * a_ - Rational(D_) * b_ * b_; }

int QF::sign() const {
  int sa = sgn(a_);
  int sb = sgn(b_);
  if (sb == 0) return sa;
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  // Opposite signs: compare a^2 with D b^2.
  int c = cmp(a_ * a_, Rational(D_) * b_ * b_);
  if (c == 0) return 0;  // unreachable for squarefree D
  return c > 0 ? sa : sb;
}

Integer QF::floor() const {
  if (sgn(b_) == 0) return floor_rational(a_);
  // |b| sqrt(D) = sqrt(P Q) / Q with b^2 D = P/Q, bracketed by an integer sqrt.
  Rational t = b_ * b_ * Rational(D_);
  const unsigned k = 64;
  Integer scaled = t.get_num() * t.get_den();
  scaled <<= 2 * k;
  Integer s;
  mpz_sqrt(s.get_mpz_t(), scaled.get_mpz_t());
  Rational approx_t(s, t.get_den());
  approx_t /= Rational(Integer(1) << k);
  Rational approx = sgn(b_) > 0 ? Rational(a_ + approx_t) : Rational(a_ - approx_t);
  Integer guess = floor_rational(approx);
  while ((*this - QF(Rational(guess))).sign() < 0) guess -= 1;
  while ((*this - QF(Rational(guess + 1))).sign() >= 0) guess += 1;
  return guess;
}

Integer QF::ceil() const { return -(-*this).floor(); }

double QF::to_double() const {
  double v = a_.get_d();
  if (sgn(b_) != 0) v += b_.get_d() * std::sqrt(static_cast<double>(D_));
  return v;
}

std::string QF::str() const {
  if (sgn(b_) == 0) return a_.get_str();
  std::string surd;
  if (b_ == 1) {
    surd = "√" + std::to_string(D_);
  } else if (b_ == -1) {
    surd = "-√" + std::to_string(D_);
  } else {
    surd = b_.get_str() + "√" + std::to_string(D_);
  }
  if (sgn(a_) == 0) return surd;
  std::string out = a_.get_str();
  if (sgn(b_) > 0) out += "+";
  return out + surd;
}

std::ostream& operator<<(std::ostream& os, const QF& x) { return os << x.str(); }

namespace {

class QFParser {
 public:
  QFParser(std::string_view text, long context_D) : text_(text), context_D_(context_D) {}

  QF run() {
    skip_spaces();
    if (at_end()) fail("empty scalar");
    bool first = true;
    while (!at_end()) {
      int sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1 : 1;
        ++pos_;
        skip_spaces();
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      term(sign);
      first = false;
      skip_spaces();
    }
    long D = D_ != 0 ? D_ : context_D_;
    if (sgn(b_) == 0) return QF(a_, 0, D);
    return QF(a_, b_, D);
  }

 private:
  void term(int sign) {
    std::optional<Rational> coeff;
    if (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) coeff = rational();
    skip_spaces();
    if (consume_root()) {
      skip_spaces();
      long D = integer_literal().get_si();
      if (D_ != 0 && D_ != D) fail("mixed discriminants");
      if (context_D_ != 0 && context_D_ != D) fail("discriminant differs from context");
      D_ = D;
      Rational c = coeff.value_or(Rational(1));
      skip_spaces();
      if (!at_end() && peek() == '/') {
        ++pos_;
        skip_spaces();
        Integer den = integer_literal();
        if (den == 0) fail("zero denominator");
        c /= Rational(den);
      }
      b_ += sign * c;
    } else {
      if (!coeff) fail("expected a number or √");
      a_ += sign * *coeff;
    }
  }

  bool consume_root() {
    static constexpr std::string_view kRoot = "√";
    static constexpr std::string_view kSqrt = "sqrt";
    if (text_.substr(pos_, kRoot.size()) == kRoot) {
      pos_ += kRoot.size();
      return true;
    }
    if (text_.substr(pos_, kSqrt.size()) == kSqrt) {
      pos_ += kSqrt.size();
      return true;
    }
    return false;
  }

  Rational rational() {
    Integer num = integer_literal();
    if (!at_end() && peek() == '/' && pos_ + 1 < text_.size() &&
        std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]))) {
      // "p/q" unless the slash belongs to a trailing "√D/q".
      ++pos_;
      Integer den = integer_literal();
      if (den == 0) fail("zero denominator");
      Rational r(num, den);
      r.canonicalize();
      return r;
    }
    return Rational(num);
  }

  Integer integer_literal() {
    std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (start == pos_) fail("expected digits");
    return Integer(std::string(text_.substr(start, pos_ - start)));
  }

  void skip_spaces() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("cannot parse scalar '" + std::string(text_) + "': " + what);
  }

  std::string_view text_;
  long context_D_;
  std::size_t pos_ = 0;
  Rational a_;
  Rational b_;
  long D_ = 0;
};

}  // namespace

QF QF::parse(std::string_view text, long context_D) { return QFParser(text, context_D).run(); }

Rational rational_below(const QF& x, unsigned bits) {
  Rational scale(Integer(1) << bits);
  Integer k = (x * QF(scale)).floor();
  Rational r(k, Integer(1) << bits);
  r.canonicalize();
  if (QF(r) == x) r -= Rational(1) / scale;
  return r;
}

Rational rational_above(const QF& x, unsigned bits) { return -rational_below(-x, bits); }

Rational sqrt_below(const QF& x) {
  if (x.sign() <= 0) throw ValidationError("sqrt_below needs a positive argument");
  Rational r(std::sqrt(x.to_double()) * (1.0 - 1e-9));
  if (sgn(r) <= 0) r = Rational(1, 1 << 30);
  while (!(QF(r * r) < x)) r /= 2;
  return r;
}

Rational sqrt_above(const QF& x) {
  if (x.sign() < 0) throw ValidationError("sqrt_above needs a nonnegative argument");
  Rational r(std::sqrt(x.to_double()) * (1.0 + 1e-9) + 1e-12);
  while (!(QF(r * r) > x)) r *= 2;
  return r;
}

// ---------------------------------------------------------------------------
// vectors

QFVector operator+(const QFVector& x, const QFVector& y) {
  if (x.size() != y.size()) throw ValidationError("vector dimension mismatch");
  QFVector out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] + y[i];
  return out;
}

QFVector operator-(const QFVector& x, const QFVector& y) {
  if (x.size() != y.size()) throw ValidationError("vector dimension mismatch");
  QFVector out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] - y[i];
  return out;
}

QFVector operator-(const QFVector& x) {
  QFVector out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = -x[i];
  return out;
}

QFVector operator*(const QF& s, const QFVector& x) {
  QFVector out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = s * x[i];
  return out;
}

QF dot(const QFVector& x, const QFVector& y) {
  if (x.size() != y.size()) throw ValidationError("vector dimension mismatch");
  QF acc;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!x[i].is_zero() && !y[i].is_zero()) acc += x[i] * y[i];
  }
  return acc;
}

bool is_zero(const QFVector& x) {
  for (const QF& v : x) {
    if (!v.is_zero()) return false;
  }
  return true;
}

std::string str(const QFVector& x, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i) out += sep;
    out += x[i].str();
  }
  return out;
}

std::vector<double> to_double(const QFVector& x) {
  std::vector<double> out;
  out.reserve(x.size());
  for (const QF& v : x) out.push_back(v.to_double());
  return out;
}

QFVector zeros(std::size_t n) { return QFVector(n); }

// ---------------------------------------------------------------------------
// matrices

QFMatrix QFMatrix::identity(std::size_t n) {
  QFMatrix I(n, n);
  for (std::size_t i = 0; i < n; ++i) I(i, i) = 1;
  return I;
}

QFMatrix QFMatrix::from_rows(const std::vector<QFVector>& rows, std::size_t cols) {
  if (!rows.empty()) cols = rows.front().size();
  QFMatrix M(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw ValidationError("ragged matrix rows");
    for (std::size_t j = 0; j < cols; ++j) M(i, j) = rows[i][j];
  }
  return M;
}

QFMatrix QFMatrix::from_columns(const std::vector<QFVector>& cols, std::size_t rows) {
  if (!cols.empty()) rows = cols.front().size();
  QFMatrix M(rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j].size() != rows) throw ValidationError("ragged matrix columns");
    for (std::size_t i = 0; i < rows; ++i) M(i, j) = cols[j][i];
  }
  return M;
}

QFVector QFMatrix::row(std::size_t i) const {
  return QFVector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                  data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

QFVector QFMatrix::column(std::size_t j) const {
  QFVector out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
  return out;
}

std::vector<QFVector> QFMatrix::columns() const {
  std::vector<QFVector> out;
  out.reserve(cols_);
  for (std::size_t j = 0; j < cols_; ++j) out.push_back(column(j));
  return out;
}

QFMatrix QFMatrix::transpose() const {
  QFMatrix T(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) T(j, i) = (*this)(i, j);
  }
  return T;
}

QFMatrix operator*(const QFMatrix& x, const QFMatrix& y) {
  if (x.cols_ != y.rows_) throw ValidationError("matrix dimension mismatch");
  QFMatrix out(x.rows_, y.cols_);
  for (std::size_t i = 0; i < x.rows_; ++i) {
    for (std::size_t k = 0; k < x.cols_; ++k) {
      const QF& xik = x(i, k);
      if (xik.is_zero()) continue;
      for (std::size_t j = 0; j < y.cols_; ++j) {
        if (!y(k, j).is_zero()) out(i, j) += xik * y(k, j);
      }
    }
  }
  return out;
}

QFVector operator*(const QFMatrix& x, const QFVector& v) {
  if (x.cols_ != v.size()) throw ValidationError("matrix-vector dimension mismatch");
  QFVector out(x.rows_);
  for (std::size_t i = 0; i < x.rows_; ++i) {
    for (std::size_t k = 0; k < x.cols_; ++k) {
      if (!x(i, k).is_zero() && !v[k].is_zero()) out[i] += x(i, k) * v[k];
    }
  }
  return out;
}

RowEchelon rref(QFMatrix M) {
  RowEchelon out;
  std::size_t r = 0;
  for (std::size_t c = 0; c < M.cols() && r < M.rows(); ++c) {
    std::size_t p = r;
    while (p < M.rows() && M(p, c).is_zero()) ++p;
    if (p == M.rows()) continue;
    if (p != r) {
      for (std::size_t j = 0; j < M.cols(); ++j) std::swap(M(p, j), M(r, j));
    }
    QF inv = QF(1) / M(r, c);
    for (std::size_t j = c; j < M.cols(); ++j) M(r, j) *= inv;
    for (std::size_t i = 0; i < M.rows(); ++i) {
      if (i == r || M(i, c).is_zero()) continue;
      QF f = M(i, c);
      for (std::size_t j = c; j < M.cols(); ++j) {
        if (!M(r, j).is_zero()) M(i, j) -= f * M(r, j);
      }
    }
    out.pivots.push_back(c);
    ++r;
  }
  out.R = std::move(M);
  return out;
}

std::size_t rank(const QFMatrix& M) { return rref(M).pivots.size(); }

std::vector<QFVector> kernel_basis(const QFMatrix& M) {
  RowEchelon e = rref(M);
  std::vector<bool> is_pivot(M.cols(), false);
  for (std::size_t c : e.pivots) is_pivot[c] = true;
  std::vector<QFVector> basis;
  for (std::size_t f = 0; f < M.cols(); ++f) {
    if (is_pivot[f]) continue;
    QFVector v(M.cols());
    v[f] = 1;
    for (std::size_t i = 0; i < e.pivots.size(); ++i) v[e.pivots[i]] = -e.R(i, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<QFVector> try_solve(const QFMatrix& M, const QFVector& v) {
  if (v.size() != M.rows()) throw ValidationError("right-hand side dimension mismatch");
  QFMatrix aug(M.rows(), M.cols() + 1);
  for (std::size_t i = 0; i < M.rows(); ++i) {
    for (std::size_t j = 0; j < M.cols(); ++j) aug(i, j) = M(i, j);
    aug(i, M.cols()) = v[i];
  }
  RowEchelon e = rref(std::move(aug));
  if (!e.pivots.empty() && e.pivots.back() == M.cols()) return std::nullopt;
  QFVector x(M.cols());
  for (std::size_t i = 0; i < e.pivots.size(); ++i) x[e.pivots[i]] = e.R(i, M.cols());
  return x;
}

QFVector solve(const QFMatrix& M, const QFVector& v) {
  auto x = try_solve(M, v);
  if (!x) throw NoSolution();
  return *x;
}

QFMatrix inverse(const QFMatrix& M) {
  if (M.rows() != M.cols()) throw ValidationError("inverse of a non-square matrix");
  std::size_t n = M.rows();
  QFMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = M(i, j);
    aug(i, n + i) = 1;
  }
  RowEchelon e = rref(std::move(aug));
  if (e.pivots.size() < n || e.pivots[n - 1] != n - 1) throw SingularMatrix();
  QFMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = e.R(i, n + j);
  }
  return inv;
}

std::vector<QFVector> column_basis(const std::vector<QFVector>& cols, std::size_t dim) {
  if (cols.empty()) return {};
  RowEchelon e = rref(QFMatrix::from_columns(cols, dim));
  std::vector<QFVector> out;
  for (std::size_t c : e.pivots) out.push_back(cols[c]);
  return out;
}

std::vector<QFVector> orthogonal_complement(const std::vector<QFVector>& vecs, std::size_t dim) {
  if (vecs.empty()) return QFMatrix::identity(dim).columns();
  return kernel_basis(QFMatrix::from_rows(vecs, dim));
}

bool span_contains(const std::vector<QFVector>& b, const std::vector<QFVector>& a, std::size_t dim) {
  if (a.empty()) return true;
  if (b.empty()) {
    for (const auto& v : a) {
      if (!is_zero(v)) return false;
    }
    return true;
  }
  std::vector<QFVector> both = b;
  both.insert(both.end(), a.begin(), a.end());
  return rank(QFMatrix::from_columns(both, dim)) == rank(QFMatrix::from_columns(b, dim));
}

}  // namespace modelset
