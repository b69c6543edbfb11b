#include "modelset/render.hpp"

#include <iomanip>
#include <ostream>
#include <sstream>

namespace modelset {

void write_csv(std::ostream& os, const PointPattern& pattern, std::size_t r, std::size_t d) {
  for (std::size_t i = 0; i < r; ++i) os << (i ? "," : "") << 'm' << i + 1;
  for (std::size_t j = 0; j < d; ++j) os << ",x" << j + 1;
  os << '\n';
  for (const auto& p : pattern.points) {
    for (std::size_t i = 0; i < p.m.size(); ++i) os << (i ? "," : "") << p.m[i].get_str();
    for (const auto& x : p.pos) os << ',' << x.str();
    os << '\n';
  }
}

namespace {

std::string num(double x) {
  std::ostringstream ss;
  ss << std::setprecision(15) << (x == 0 ? 0.0 : x);
  return ss.str();
}

}  // namespace

void write_svg(std::ostream& os, const PointPattern& pattern, std::size_t d, const Rational& radius) {
  const double R = radius.get_d();
  const double dot_r = R / 100;
  const std::string side = num(2 * R);
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"600\" height=\"600\" viewBox=\""
     << num(-R) << ' ' << num(-R) << ' ' << side << ' ' << side << "\">\n"
     << "<rect x=\"" << num(-R) << "\" y=\"" << num(-R) << "\" width=\"" << side << "\" height=\"" << side
     << "\" fill=\"white\"/>\n"
     << "<g fill=\"black\">\n";
  for (const auto& p : pattern.points) {
    double x = p.pos[0].to_double();
    // SVG y grows downwards.
    double y = d > 1 ? -p.pos[1].to_double() : 0.0;
    os << "<circle cx=\"" << num(x) << "\" cy=\"" << num(y) << "\" r=\"" << num(dot_r) << "\"/>\n";
  }
  os << "</g>\n</svg>\n";
}

}  // namespace modelset
