#pragma once

// Integer lattices: Hermite normal form, integer kernels and membership tests
// for finitely generated Z-modules with coordinates in Q(sqrt D).

#include <optional>
#include <vector>

#include "modelset/qfield.hpp"

namespace modelset {

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_columns(const std::vector<std::vector<Integer>>& cols, std::size_t rows = 0);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<Integer> column(std::size_t j) const;
  std::vector<std::vector<Integer>> columns() const;

  friend IntMatrix operator*(const IntMatrix& x, const IntMatrix& y);
  friend bool operator==(const IntMatrix& x, const IntMatrix& y) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

Integer determinant(const IntMatrix& M);

/// Column Hermite normal form H = M U with U unimodular. Nonzero columns come
/// first; column j has its pivot in row pivots[j] (strictly increasing), the
/// pivot is positive, and entries to its left in the pivot row lie in
/// [0, pivot).
struct HermiteForm {
  IntMatrix H;
  IntMatrix U;
  std::vector<std::size_t> pivots;
  std::size_t rank() const { return pivots.size(); }
};

HermiteForm hnf(const IntMatrix& M);

/// Z-basis of {m : M m = 0}, as the nonzero columns of a column HNF.
std::vector<std::vector<Integer>> integer_kernel(const IntMatrix& M);

/// Integer solution m of A m = c, if one exists.
std::optional<std::vector<Integer>> solve_integer(const IntMatrix& A, const std::vector<Integer>& c);

using RationalRow = std::vector<Rational>;

/// Splits each F-linear form (coefficients in F, unknowns rational) into its
/// rational and sqrt(D) parts, dropping zero rows.
std::vector<RationalRow> split_to_rational(const std::vector<QFVector>& rows);
/// Scales each row by the lcm of its denominators.
IntMatrix clear_denominators(const std::vector<RationalRow>& rows, std::size_t cols);
/// Integer vectors m with sum_j rows[i][j] m_j = 0 for every i.
std::vector<std::vector<Integer>> integer_kernel_of_forms(const std::vector<QFVector>& rows, std::size_t unknowns);

/// Z-basis of the subgroup of Q^k generated by `gens` (canonical: HNF columns).
std::vector<RationalRow> lattice_basis(const std::vector<RationalRow>& gens, std::size_t dim);

/// Subgroup of F^k generated by the given vectors (possibly redundant).
class ZModule {
 public:
  ZModule(std::vector<QFVector> generators, std::size_t dim);

  const std::vector<QFVector>& generators() const { return gens_; }
  std::size_t dim() const { return dim_; }
  long field() const { return D_; }

  QFVector combine(const std::vector<Integer>& m) const;
  /// Integer coefficients expressing v, or nullopt when v is not in the module.
  std::optional<std::vector<Integer>> membership(const QFVector& v) const;
  bool contains(const QFVector& v) const { return membership(v).has_value(); }
  /// A Z-basis (linearly independent over Z), canonical for the module.
  std::vector<QFVector> basis() const;
  /// Image under a linear map given by rows of an F-matrix.
  ZModule image(const QFMatrix& A) const;

 private:
  std::vector<QFVector> gens_;
  std::size_t dim_;
  long D_;
};

/// Whether (v + L) meets the F-subspace spanned by `subspace`. On success the
/// returned coefficients give gamma in L with v - gamma in the subspace.
std::optional<std::vector<Integer>> coset_meets_subspace(const QFVector& v, const ZModule& L,
                                                         const std::vector<QFVector>& subspace);

/// Discriminant shared by the given vectors (0 when all are rational).
long field_of(const std::vector<QFVector>& vecs);

}  // namespace modelset
