#pragma once

// Hull points as (torus point, partial cone type) pairs, their point
// patterns, and the action of the Ellis semigroup on them.

#include <vector>

#include "modelset/ellis.hpp"

namespace modelset {

/// For each hyperplane of the arrangement: whether a singular translate of
/// it passes through w.
using CutType = std::vector<bool>;

/// Hull point (z, c): c is defined (±1) exactly on the cut type of z and
/// kUndefined elsewhere.
struct HullPoint {
  TorusPoint z;
  ConeType c;

  friend bool operator==(const HullPoint&, const HullPoint&) = default;
};

class Hull {
 public:
  explicit Hull(const EllisStructure& ellis);

  const EllisStructure& ellis() const { return E_; }

  CutType cut_type(const QFVector& w) const;
  bool is_nonsingular(const QFVector& w) const;
  /// One hull point per chamber of the sub-arrangement given by the cut type.
  std::vector<HullPoint> fiber(const TorusPoint& z) const;
  /// Throws InvariantViolation when p is not a hull point.
  void validate(const HullPoint& p) const;
  bool is_valid(const HullPoint& p) const;

  /// Points of the pattern of p inside B(0, radius).
  PointPattern selector(const HullPoint& p, const Rational& radius) const;
  /// Pattern of the rule at (w, c), translated by -s, inside B(0, radius).
  /// w need not be reduced modulo Gamma*.
  PointPattern selector_at(const QFVector& w, const QFVector& s, const ConeType& c, const Rational& radius) const;

  HullPoint act(const HullPoint& p, const HullElement& g) const;

  struct NetLimit {
    PointPattern patch;
    std::vector<Rational> deltas;                // schedule entries used
    std::vector<std::vector<Integer>> gammas;    // lattice vectors chosen per delta
    Rational certified;                          // stability radius at the limit point
    bool stabilized = false;
  };
  /// Radius r such that moving w by any u with |u| < r changes no face sign
  /// a_f.(w + u - gamma*) - c_f that is nonzero at u = 0, for the candidates
  /// gamma of the patch on B(center, radius). At most 1/4.
  Rational stability_radius(const QFVector& w, const QFVector& center, const Rational& radius) const;
  /// Translates the pattern of p by lattice vectors approaching g from inside
  /// its cone; stops once two consecutive patches on B(0, radius) agree with
  /// both deltas below the stability radius.
  NetLimit net_limit(const HullPoint& p, const HullElement& g, const Rational& radius,
                     const std::vector<Rational>& schedule) const;
  static std::vector<Rational> default_schedule(int steps = 24);

 private:
  const EllisStructure& E_;
  std::vector<ZModule> face_modules_;  // a_f . Gamma* per reversed face
};

}  // namespace modelset
