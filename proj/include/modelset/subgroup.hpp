#pragma once

// Closures of finitely generated subgroups of R^n with entries in Q(sqrt D),
// and the cone data derived from them.

#include <optional>
#include <vector>

#include "modelset/arrangement.hpp"
#include "modelset/cps.hpp"
#include "modelset/qfield.hpp"
#include "modelset/zmodule.hpp"

namespace modelset {

/// Subgroup of F^n generated by `generators`, all lying in the subspace
/// spanned by `ambient`.
class FGSubgroup {
 public:
  FGSubgroup(std::vector<QFVector> ambient, std::vector<QFVector> generators, std::size_t n);

  std::size_t n() const { return n_; }
  const std::vector<QFVector>& ambient() const { return ambient_; }
  const std::vector<QFVector>& generators() const { return gens_; }
  /// Generators in coordinates of the ambient basis (one row per generator).
  const std::vector<QFVector>& coordinates() const { return coords_; }

 private:
  std::vector<QFVector> ambient_;
  std::vector<QFVector> gens_;
  std::vector<QFVector> coords_;
  std::size_t n_;
};

/// closure(G) = V + (discrete group in D), with V and D complementary in the
/// ambient subspace. D is the Euclidean orthogonal complement of V there.
struct ClosureDecomposition {
  std::vector<QFVector> V;          // F-basis, in R^n
  std::vector<QFVector> D;          // F-basis, in R^n
  std::vector<QFVector> dual;       // F-basis of span{y : y . g in Z}, in ambient coordinates
  std::vector<QFVector> latticeDV;  // Z-basis of the projection of G to D along V
  Rational epsilon;                 // 0 < epsilon < shortest nonzero vector of latticeDV

  bool is_dense_in(std::size_t ambient_dim) const { return V.size() == ambient_dim; }
};

ClosureDecomposition closure_decompose(const FGSubgroup& G);
bool is_dense(const FGSubgroup& G);

/// Certified rational strictly below the length of the shortest nonzero
/// vector of the lattice with the given Z-basis (1 for the zero lattice).
Rational shortest_vector_bound(const std::vector<QFVector>& basis, std::size_t n);

/// Per cone type: the span of the cone, the closure of Gamma* inside it and
/// the plain cone C_t ∩ V_t.
struct PlainCone {
  ConeType t;
  std::vector<QFVector> span;  // basis of the linear span of the cone
  ClosureDecomposition closure;
  bool nontrivial = false;
  QFVector witness;            // point of the plain cone (0 for the origin)
  std::size_t plain_dim() const { return closure.V.size(); }
  bool equals_cone() const { return closure.V.size() == span.size(); }
};

/// Context shared by cone computations: scheme, reversed window faces and
/// the arrangement of linear hyperplanes.
struct ConeContext {
  const Scheme& scheme;
  FaceData faces;
  Arrangement arrangement;

  ConeContext(const Scheme& s, const Window& window);
};

PlainCone analyze_cone(const ConeContext& ctx, const ConeType& t);

/// Whether w lies in V_t + Gamma*.
bool allowed(const ConeContext& ctx, const PlainCone& cone, const QFVector& w);
/// Integer coefficients m with w - star(m) in V_t, when allowed.
std::optional<std::vector<Integer>> allowed_witness(const ConeContext& ctx, const PlainCone& cone,
                                                    const QFVector& w);

}  // namespace modelset
