#pragma once

// Enumeration of lattice points offset + B m (m integral) inside a box.

#include <functional>
#include <vector>

#include "modelset/qfield.hpp"

namespace modelset {

using Coeffs = std::vector<long>;

/// Calls `visit(m, x)` for every integer m such that offset + B m lies in the
/// box [lo, hi] (inclusive), where x is a double approximation of that point.
/// Some points slightly outside the box may also be visited; callers filter
/// exactly. B must have full column rank and every hi[j] > lo[j].
void enumerate_box(const QFMatrix& B, const QFVector& offset, const std::vector<Rational>& lo,
                   const std::vector<Rational>& hi,
                   const std::function<void(const Coeffs& m, const std::vector<double>& x)>& visit);

}  // namespace modelset
