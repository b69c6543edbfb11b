#pragma once

// Cut and project schemes, polytopal windows and model set generation.

#include <functional>
#include <string>
#include <vector>

#include "modelset/enumerate.hpp"
#include "modelset/qfield.hpp"
#include "modelset/zmodule.hpp"

namespace modelset {

/// Lattice Sigma in R^n x R^d spanned by r = n + d vectors (e_i*, e_i).
class Scheme {
 public:
  Scheme(long D, std::size_t d, std::size_t n, std::vector<QFVector> phys, std::vector<QFVector> star);

  long field() const { return D_; }
  std::size_t d() const { return d_; }
  std::size_t n() const { return n_; }
  std::size_t r() const { return phys_.size(); }
  const std::vector<QFVector>& phys() const { return phys_; }
  const std::vector<QFVector>& star() const { return star_; }

  QFVector star_of(const std::vector<Integer>& m) const;
  QFVector phys_of(const std::vector<Integer>& m) const;
  QFVector star_of(const Coeffs& m) const;
  QFVector phys_of(const Coeffs& m) const;

  /// Columns (e_i*, e_i): a point of Sigma is basis() * m.
  const QFMatrix& basis() const { return basis_; }
  /// Coordinates of v in R^{n+d} with respect to the Sigma basis.
  QFVector sigma_coordinates(const QFVector& v) const { return basis_inv_ * v; }

  /// Gamma* as a module in R^n.
  ZModule gamma_star() const { return ZModule(star_, n_); }
  /// Integer coefficient vectors m with star(m) in the given subspace of R^n.
  std::vector<std::vector<Integer>> stabilizer(const std::vector<QFVector>& subspace) const;

  const std::vector<std::vector<double>>& phys_approx() const { return phys_d_; }
  const std::vector<std::vector<double>>& star_approx() const { return star_d_; }

 private:
  long D_;
  std::size_t d_;
  std::size_t n_;
  std::vector<QFVector> phys_;
  std::vector<QFVector> star_;
  QFMatrix basis_;
  QFMatrix basis_inv_;
  std::vector<std::vector<double>> phys_d_;
  std::vector<std::vector<double>> star_d_;
};

/// Affine face {x : a.x = c} with the interior on the side where
/// side * (a.x - c) > 0. Normals are normalized: first nonzero coordinate 1.
struct Face {
  QFVector a;
  QF c;
  int side = 1;
};

/// Normalizes a nonzero normal so that its first nonzero coordinate is 1.
/// Returns the positive-or-negative factor it was divided by.
QF normalize_normal(QFVector& a);

/// Compact convex polytope in R^n (n = 1 or 2).
class Window {
 public:
  static Window from_vertices(std::vector<QFVector> vertices);
  static Window from_halfspaces(const std::vector<Face>& faces, std::size_t n);

  std::size_t dim() const { return n_; }
  /// n = 2: counterclockwise starting at the lexicographic minimum.
  /// n = 1: the two endpoints in increasing order.
  const std::vector<QFVector>& vertices() const { return vertices_; }
  const std::vector<Face>& faces() const { return faces_; }
  QFVector centroid() const;

  bool contains(const QFVector& x, bool closed) const;
  /// Componentwise bounding box.
  QFVector lower() const;
  QFVector upper() const;

 private:
  Window(std::vector<QFVector> vertices, std::size_t n);
  std::size_t n_ = 0;
  std::vector<QFVector> vertices_;
  std::vector<Face> faces_;
};

/// Zonotope sum_i [0, e_i*]. Throws ValidationError("degenerate window").
Window canonical_window(const Scheme& scheme);

/// Faces of the reversed window M = -W, grouped by linear hyperplane.
struct ReversedFace {
  Face face;
  std::size_t hyperplane;
};

struct FaceData {
  std::vector<ReversedFace> faces;
  /// Normals of the linear hyperplanes, normalized, in lexicographic order.
  std::vector<QFVector> hyperplanes;
  std::size_t n = 0;
};

FaceData reversed_faces(const Window& window);

struct LatticePoint {
  std::vector<Integer> m;
  QFVector pos;
};

/// Points sorted lexicographically by m; pos = sum m_i e_i - shift.
struct PointPattern {
  std::vector<LatticePoint> points;
  QFVector shift;

  std::size_t size() const { return points.size(); }
  /// Positions sorted lexicographically, for comparing patterns.
  std::vector<QFVector> positions() const;
};

bool same_positions(const PointPattern& x, const PointPattern& y);

/// Ball B(center, radius) in physical space.
struct Ball {
  QFVector center;
  Rational radius;
};

/// Visits every m with star(m) in w + W (closed) and phys(m) in the ball,
/// plus possibly a few extra candidates near the boundary (callers decide
/// exactly). Uses double arithmetic only to prune.
void for_each_candidate(const Scheme& scheme, const Window& window, const QFVector& w, const Ball& ball,
                        const std::function<void(const Coeffs& m)>& visit);

/// Model set points gamma with gamma* in w + W (closed) or w + interior(W)
/// (open) and gamma in the ball.
PointPattern generate_pattern(const Scheme& scheme, const Window& window, const QFVector& w, const Ball& ball,
                              bool closed);

struct HyperplaneReport {
  QFVector normal;
  std::vector<QFVector> stabilizer_star_basis;  // Z-basis of Stab(H)* inside H
  std::size_t stabilizer_rank = 0;
  bool dense = false;
};

struct ValidationReport {
  bool pass = false;
  std::vector<HyperplaneReport> hyperplanes;
};

/// Sufficient condition for the window to be almost canonical: every face
/// stabilizer has a star image dense in its linear hyperplane. `pass` false
/// means inconclusive.
ValidationReport validate_almost_canonical(const Scheme& scheme, const Window& window);

/// Basis vectors of the linear hyperplane with the given normal.
std::vector<QFVector> hyperplane_basis(const QFVector& normal);

}  // namespace modelset
