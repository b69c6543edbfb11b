#pragma once

// Text renderings of point patterns: exact CSV and an approximate SVG.

#include <iosfwd>

#include "modelset/cps.hpp"

namespace modelset {

/// Header "m1,...,mr,x1,...,xd", then one row per point with exact scalars.
void write_csv(std::ostream& os, const PointPattern& pattern, std::size_t r, std::size_t d);

/// Points as circles in the square [-radius, radius]^2 (d = 1 patterns lie on
/// the horizontal axis). Coordinates use 15 significant digits.
void write_svg(std::ostream& os, const PointPattern& pattern, std::size_t d, const Rational& radius);

}  // namespace modelset
