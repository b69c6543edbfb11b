#pragma once

// Central hyperplane arrangements in R^n, their cones and the face semigroup.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "modelset/qfield.hpp"

namespace modelset {

/// Sign per hyperplane: -1, 0, +1 (and kUndefined for hull cone types).
using ConeType = std::vector<int>;
inline constexpr int kUndefined = 2;

/// "+0-+"; kUndefined prints as "∞".
std::string cone_str(const ConeType& t);
ConeType parse_cone(std::string_view text);

/// Pointwise composition: keep t(H) unless it is 0, then take u(H).
ConeType product(const ConeType& t, const ConeType& u);
/// t <= u  iff  t = u.t
bool leq(const ConeType& t, const ConeType& u);
bool is_chamber(const ConeType& t);
bool is_origin(const ConeType& t);

class Arrangement {
 public:
  Arrangement(std::vector<QFVector> normals, std::size_t n);

  std::size_t n() const { return n_; }
  std::size_t size() const { return normals_.size(); }
  const std::vector<QFVector>& normals() const { return normals_; }

  /// Point of the open cone {sign(a_H.x) = t(H)} with |a_H.x| >= 1 wherever
  /// t(H) != 0; nullopt when the cone is empty.
  std::optional<QFVector> witness(const ConeType& t) const;
  bool feasible(const ConeType& t) const { return witness(t).has_value(); }
  std::size_t cone_dimension(const ConeType& t) const;
  ConeType signs_of(const QFVector& x) const;

 private:
  std::vector<QFVector> normals_;
  std::size_t n_;
};

struct FaceSemigroup {
  std::vector<ConeType> cones;  // lexicographic in (-, 0, +)
  std::vector<QFVector> witnesses;
  std::vector<std::size_t> dims;
  std::vector<std::vector<std::size_t>> table;  // table[i][j] = index of cones[i].cones[j]

  std::size_t size() const { return cones.size(); }
  std::size_t index_of(const ConeType& t) const;
  std::size_t identity() const;
};

/// All non-empty cones with the product table; throws InvariantViolation if
/// a product ever leaves the set.
FaceSemigroup enumerate_cones(const Arrangement& arr);
/// Product with a feasibility check of the result.
ConeType checked_product(const Arrangement& arr, const ConeType& t, const ConeType& u);

/// Whether `ideal` (indices) is a right ideal inside `within`: ideal . within ⊆ ideal.
bool is_right_ideal(const FaceSemigroup& S, const std::vector<std::size_t>& ideal,
                    const std::vector<std::size_t>& within);
/// Chamber indices among `within`.
std::vector<std::size_t> minimal_ideal(const FaceSemigroup& S, const std::vector<std::size_t>& within);

/// Sign vector of u + delta u' for small delta, with u, u' interior points of
/// the two cones; delta halves until the answer repeats.
ConeType geometric_product_oracle(const Arrangement& arr, const ConeType& t, const ConeType& u);

}  // namespace modelset
