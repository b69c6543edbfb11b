#pragma once

// The Ellis semigroup of a model set hull described as data: torus points
// paired with non-trivial cone types.

#include <optional>
#include <string>
#include <vector>

#include "modelset/arrangement.hpp"
#include "modelset/cps.hpp"
#include "modelset/subgroup.hpp"

namespace modelset {

/// Point of the torus R^{n+d} / Sigma, stored as the representative whose
/// Sigma-coordinates lie in [0, 1).
struct TorusPoint {
  QFVector v;  // internal coordinates first, then physical

  friend bool operator==(const TorusPoint&, const TorusPoint&) = default;
};

/// Element (z, t) of the hull's Ellis semigroup.
struct HullElement {
  TorusPoint z;
  ConeType t;

  friend bool operator==(const HullElement&, const HullElement&) = default;
};

/// Element (w, t) of the internal Ellis semigroup (w not reduced modulo Gamma*).
struct InternalElement {
  QFVector w;
  ConeType t;
};

/// Group of non-trivial cone types sharing the same V_t.
struct EllisComponent {
  std::vector<QFVector> V;
  std::vector<ConeType> types;
  std::size_t dim() const { return V.size(); }
};

class EllisStructure {
 public:
  EllisStructure(const Scheme& scheme, const Window& window);

  const Scheme& scheme() const { return ctx_.scheme; }
  const Window& window() const { return window_; }
  const ConeContext& context() const { return ctx_; }
  const Arrangement& arrangement() const { return ctx_.arrangement; }
  const FaceData& faces() const { return ctx_.faces; }
  const FaceSemigroup& semigroup() const { return semigroup_; }
  /// Cone analysis, indexed like semigroup().cones.
  const std::vector<PlainCone>& cones() const { return cones_; }
  const PlainCone& cone(const ConeType& t) const { return cones_[semigroup_.index_of(t)]; }
  std::vector<std::size_t> nontrivial_indices() const;
  ConeType origin() const { return ConeType(ctx_.arrangement.size(), 0); }

  std::size_t n() const { return ctx_.scheme.n(); }
  std::size_t d() const { return ctx_.scheme.d(); }

  TorusPoint canonical(const QFVector& v) const;
  TorusPoint torus(const QFVector& w, const QFVector& s) const;
  QFVector internal(const TorusPoint& z) const;
  QFVector physical(const TorusPoint& z) const;
  TorusPoint add(const TorusPoint& x, const TorusPoint& y) const;
  std::string str(const TorusPoint& z) const;

  bool is_member(const TorusPoint& z, const ConeType& t) const;
  /// Validated element; throws ValidationError when (z, t) is not in the semigroup.
  HullElement element(const TorusPoint& z, const ConeType& t) const;
  HullElement identity() const { return {canonical(zeros(n() + d())), origin()}; }
  /// Element induced by translating patterns by gamma (pattern -> pattern - gamma).
  HullElement translation(const std::vector<Integer>& m) const;

  HullElement compose(const HullElement& g, const HullElement& h) const;
  bool is_invertible(const HullElement& g) const;
  bool range_leq(const HullElement& g, const HullElement& h) const { return leq(g.t, h.t); }
  TorusPoint pistar(const HullElement& g) const { return g.z; }

  std::vector<HullElement> idempotents() const;
  std::vector<ConeType> minimal_ideal_types() const;
  std::vector<EllisComponent> components() const;

  bool is_member(const InternalElement& g) const;
  /// Whether some cone head of the candidate around its w fits inside the
  /// head of radius eps of the target.
  bool in_basic_neighborhood(const InternalElement& candidate, const InternalElement& target,
                             const Rational& eps) const;
  /// A rational delta > 0 for which the candidate's head of radius delta
  /// lies in the target's head of radius eps; nullopt when the predicate fails.
  std::optional<Rational> neighborhood_delta(const InternalElement& candidate, const InternalElement& target,
                                             const Rational& eps) const;

  /// Coefficients m with star(m) in w0 + (C_t ∩ V_t ∩ B(0, delta)), with the
  /// smallest physical norm among those found; the physical search radius
  /// doubles up to `max_radius`. Throws Error when nothing is found.
  std::vector<Integer> search_head(const QFVector& w0, const ConeType& t, const Rational& delta,
                                   long max_radius = 1L << 16) const;
  /// Whether u lies in the open plain cone of t (u must be in V_t).
  bool in_plain_cone(const QFVector& u, const ConeType& t) const;

 private:
  Window window_;
  ConeContext ctx_;
  FaceSemigroup semigroup_;
  std::vector<PlainCone> cones_;
};

}  // namespace modelset
