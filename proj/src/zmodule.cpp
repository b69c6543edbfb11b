#include "modelset/zmodule.hpp"

#include <utility>

namespace modelset {

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix I(n, n);
  for (std::size_t i = 0; i < n; ++i) I(i, i) = 1;
  return I;
}

IntMatrix IntMatrix::from_columns(const std::vector<std::vector<Integer>>& cols, std::size_t rows) {
  if (!cols.empty()) rows = cols.front().size();
  IntMatrix M(rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j].size() != rows) throw ValidationError("ragged integer matrix");
    for (std::size_t i = 0; i < rows; ++i) M(i, j) = cols[j][i];
  }
  return M;
}

std::vector<Integer> IntMatrix::column(std::size_t j) const {
  std::vector<Integer> out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
  return out;
}

std::vector<std::vector<Integer>> IntMatrix::columns() const {
  std::vector<std::vector<Integer>> out;
  for (std::size_t j = 0; j < cols_; ++j) out.push_back(column(j));
  return out;
}

IntMatrix operator*(const IntMatrix& x, const IntMatrix& y) {
  if (x.cols_ != y.rows_) throw ValidationError("integer matrix dimension mismatch");
  IntMatrix out(x.rows_, y.cols_);
  for (std::size_t i = 0; i < x.rows_; ++i) {
    for (std::size_t k = 0; k < x.cols_; ++k) {
      if (sgn(x(i, k)) == 0) continue;
      for (std::size_t j = 0; j < y.cols_; ++j) out(i, j) += x(i, k) * y(k, j);
    }
  }
  return out;
}

Integer determinant(const IntMatrix& M) {
  if (M.rows() != M.cols()) throw ValidationError("determinant of a non-square matrix");
  std::size_t n = M.rows();
  if (n == 0) return 1;
  // Bareiss fraction-free elimination.
  IntMatrix A = M;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (sgn(A(k, k)) == 0) {
      std::size_t p = k + 1;
      while (p < n && sgn(A(p, k)) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(A(k, j), A(p, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer num = A(i, j) * A(k, k) - A(i, k) * A(k, j);
        mpz_divexact(A(i, j).get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = A(k, k);
  }
  return sign * A(n - 1, n - 1);
}

namespace {

// Column operations applied to H and U together.
struct ColumnOps {
  IntMatrix& H;
  IntMatrix& U;

  void swap(std::size_t a, std::size_t b) {
    for (std::size_t i = 0; i < H.rows(); ++i) std::swap(H(i, a), H(i, b));
    for (std::size_t i = 0; i < U.rows(); ++i) std::swap(U(i, a), U(i, b));
  }
  void negate(std::size_t a) {
    for (std::size_t i = 0; i < H.rows(); ++i) H(i, a) = -H(i, a);
    for (std::size_t i = 0; i < U.rows(); ++i) U(i, a) = -U(i, a);
  }
  // col_b -= q col_a
  void subtract(std::size_t b, std::size_t a, const Integer& q) {
    if (sgn(q) == 0) return;
    for (std::size_t i = 0; i < H.rows(); ++i) H(i, b) -= q * H(i, a);
    for (std::size_t i = 0; i < U.rows(); ++i) U(i, b) -= q * U(i, a);
  }
  // (col_a, col_b) <- (s col_a + t col_b, u col_a + v col_b), with s v - t u = 1.
  void combine(std::size_t a, std::size_t b, const Integer& s, const Integer& t, const Integer& u,
               const Integer& v) {
    auto apply = [&](IntMatrix& M) {
      for (std::size_t i = 0; i < M.rows(); ++i) {
        Integer x = M(i, a);
        Integer y = M(i, b);
        M(i, a) = s * x + t * y;
        M(i, b) = u * x + v * y;
      }
    };
    apply(H);
    apply(U);
  }
};

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

}  // namespace

HermiteForm hnf(const IntMatrix& M) {
  HermiteForm out{M, IntMatrix::identity(M.cols()), {}};
  ColumnOps ops{out.H, out.U};
  std::size_t k = 0;
  for (std::size_t i = 0; i < M.rows() && k < M.cols(); ++i) {
    for (std::size_t j = k + 1; j < M.cols(); ++j) {
      if (sgn(out.H(i, j)) == 0) continue;
      if (sgn(out.H(i, k)) == 0) {
        ops.swap(k, j);
        continue;
      }
      Integer a = out.H(i, k);
      Integer b = out.H(i, j);
      if (sgn(b % a) == 0) {
        ops.subtract(j, k, b / a);
        continue;
      }
      Integer g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
      Integer u = -b / g;
      Integer v = a / g;
      ops.combine(k, j, s, t, u, v);
    }
    if (sgn(out.H(i, k)) == 0) continue;
    if (sgn(out.H(i, k)) < 0) ops.negate(k);
    for (std::size_t j = 0; j < k; ++j) ops.subtract(j, k, floor_div(out.H(i, j), out.H(i, k)));
    out.pivots.push_back(i);
    ++k;
  }
  return out;
}

std::vector<std::vector<Integer>> integer_kernel(const IntMatrix& M) {
  HermiteForm h = hnf(M);
  std::vector<std::vector<Integer>> raw;
  for (std::size_t j = h.rank(); j < M.cols(); ++j) raw.push_back(h.U.column(j));
  if (raw.empty()) return {};
  HermiteForm c = hnf(IntMatrix::from_columns(raw, M.cols()));
  std::vector<std::vector<Integer>> out;
  for (std::size_t j = 0; j < c.rank(); ++j) out.push_back(c.H.column(j));
  return out;
}

std::optional<std::vector<Integer>> solve_integer(const IntMatrix& A, const std::vector<Integer>& c) {
  if (c.size() != A.rows()) throw ValidationError("right-hand side dimension mismatch");
  HermiteForm h = hnf(A);
  std::vector<Integer> y(A.cols());
  std::size_t next = 0;
  for (std::size_t i = 0; i < A.rows(); ++i) {
    Integer r = c[i];
    for (std::size_t j = 0; j < next; ++j) r -= h.H(i, j) * y[j];
    if (next < h.rank() && h.pivots[next] == i) {
      if (sgn(r % h.H(i, next)) != 0) return std::nullopt;
      y[next] = r / h.H(i, next);
      ++next;
    } else if (sgn(r) != 0) {
      return std::nullopt;
    }
  }
  std::vector<Integer> m(A.cols());
  for (std::size_t i = 0; i < A.cols(); ++i) {
    for (std::size_t j = 0; j < h.rank(); ++j) m[i] += h.U(i, j) * y[j];
  }
  return m;
}

std::vector<RationalRow> split_to_rational(const std::vector<QFVector>& rows) {
  std::vector<RationalRow> out;
  for (const QFVector& row : rows) {
    RationalRow ra(row.size());
    RationalRow rb(row.size());
    bool any_a = false;
    bool any_b = false;
    for (std::size_t j = 0; j < row.size(); ++j) {
      ra[j] = row[j].a();
      rb[j] = row[j].b();
      any_a = any_a || sgn(ra[j]) != 0;
      any_b = any_b || sgn(rb[j]) != 0;
    }
    if (any_a) out.push_back(std::move(ra));
    if (any_b) out.push_back(std::move(rb));
  }
  return out;
}

IntMatrix clear_denominators(const std::vector<RationalRow>& rows, std::size_t cols) {
  IntMatrix M(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    Integer l = 1;
    for (const Rational& q : rows[i]) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
    for (std::size_t j = 0; j < cols; ++j) {
      Rational s = rows[i][j] * Rational(l);
      M(i, j) = s.get_num();
    }
  }
  return M;
}

std::vector<std::vector<Integer>> integer_kernel_of_forms(const std::vector<QFVector>& rows,
                                                          std::size_t unknowns) {
  auto split = split_to_rational(rows);
  if (split.empty()) return IntMatrix::identity(unknowns).columns();
  return integer_kernel(clear_denominators(split, unknowns));
}

std::vector<RationalRow> lattice_basis(const std::vector<RationalRow>& gens, std::size_t dim) {
  if (gens.empty()) return {};
  Integer l = 1;
  for (const auto& g : gens) {
    for (const Rational& q : g) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
  }
  IntMatrix M(dim, gens.size());
  for (std::size_t j = 0; j < gens.size(); ++j) {
    for (std::size_t i = 0; i < dim; ++i) M(i, j) = Rational(gens[j][i] * Rational(l)).get_num();
  }
  HermiteForm h = hnf(M);
  std::vector<RationalRow> out;
  for (std::size_t j = 0; j < h.rank(); ++j) {
    RationalRow v(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      v[i] = Rational(h.H(i, j), l);
      v[i].canonicalize();
    }
    out.push_back(std::move(v));
  }
  return out;
}

long field_of(const std::vector<QFVector>& vecs) {
  for (const auto& v : vecs) {
    for (const QF& x : v) {
      if (x.D() != 0) return x.D();
    }
  }
  return 0;
}

ZModule::ZModule(std::vector<QFVector> generators, std::size_t dim)
    : gens_(std::move(generators)), dim_(dim), D_(field_of(gens_)) {
  for (const auto& g : gens_) {
    if (g.size() != dim_) throw ValidationError("module generator dimension mismatch");
  }
}

QFVector ZModule::combine(const std::vector<Integer>& m) const {
  if (m.size() != gens_.size()) throw ValidationError("coefficient count mismatch");
  QFVector out(dim_);
  for (std::size_t j = 0; j < gens_.size(); ++j) {
    if (sgn(m[j]) == 0) continue;
    QF c(Rational(m[j]));
    for (std::size_t i = 0; i < dim_; ++i) {
      if (!gens_[j][i].is_zero()) out[i] += c * gens_[j][i];
    }
  }
  return out;
}

std::optional<std::vector<Integer>> ZModule::membership(const QFVector& v) const {
  if (v.size() != dim_) throw ValidationError("vector dimension mismatch");
  const std::size_t g = gens_.size();
  // Each coordinate equation splits into rational and sqrt(D) parts; the
  // right-hand side rides along as an extra column.
  std::vector<RationalRow> rows;
  for (std::size_t i = 0; i < dim_; ++i) {
    RationalRow ra(g + 1);
    RationalRow rb(g + 1);
    for (std::size_t j = 0; j < g; ++j) {
      ra[j] = gens_[j][i].a();
      rb[j] = gens_[j][i].b();
    }
    ra[g] = v[i].a();
    rb[g] = v[i].b();
    rows.push_back(std::move(ra));
    rows.push_back(std::move(rb));
  }
  IntMatrix full = clear_denominators(rows, g + 1);
  IntMatrix A(full.rows(), g);
  std::vector<Integer> c(full.rows());
  for (std::size_t i = 0; i < full.rows(); ++i) {
    for (std::size_t j = 0; j < g; ++j) A(i, j) = full(i, j);
    c[i] = full(i, g);
  }
  return solve_integer(A, c);
}

std::vector<QFVector> ZModule::basis() const {
  std::vector<RationalRow> split;
  for (const auto& gen : gens_) {
    RationalRow s(2 * dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
      s[i] = gen[i].a();
      s[dim_ + i] = gen[i].b();
    }
    split.push_back(std::move(s));
  }
  std::vector<QFVector> out;
  for (const auto& s : lattice_basis(split, 2 * dim_)) {
    QFVector v(dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
      v[i] = sgn(s[dim_ + i]) == 0 ? QF(s[i]) : QF(s[i], s[dim_ + i], D_);
    }
    out.push_back(std::move(v));
  }
  return out;
}

ZModule ZModule::image(const QFMatrix& A) const {
  std::vector<QFVector> gens;
  gens.reserve(gens_.size());
  for (const auto& g : gens_) gens.push_back(A * g);
  return ZModule(std::move(gens), A.rows());
}

std::optional<std::vector<Integer>> coset_meets_subspace(const QFVector& v, const ZModule& L,
                                                         const std::vector<QFVector>& subspace) {
  std::vector<QFVector> ann = orthogonal_complement(subspace, L.dim());
  if (ann.empty()) return std::vector<Integer>(L.generators().size());
  QFMatrix B = QFMatrix::from_rows(ann, L.dim());
  return L.image(B).membership(B * v);
}

}  // namespace modelset
