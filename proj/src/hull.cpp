#include "modelset/hull.hpp"

#include <algorithm>
#include <cmath>

namespace modelset {

namespace {

constexpr double kTol = 1e-7;

std::vector<Integer> to_integers(const Coeffs& m) {
  std::vector<Integer> out;
  out.reserve(m.size());
  for (long v : m) out.emplace_back(v);
  return out;
}

}  // namespace

Hull::Hull(const EllisStructure& ellis) : E_(ellis) {
  const Scheme& s = E_.scheme();
  for (const auto& rf : E_.faces().faces) {
    std::vector<QFVector> gens;
    for (const auto& e : s.star()) gens.push_back({dot(rf.face.a, e)});
    face_modules_.emplace_back(std::move(gens), 1);
  }
}

CutType Hull::cut_type(const QFVector& w) const {
  const auto& faces = E_.faces().faces;
  CutType out(E_.arrangement().size(), false);
  for (std::size_t f = 0; f < faces.size(); ++f) {
    std::size_t h = faces[f].hyperplane;
    if (out[h]) continue;
    QF offset = dot(faces[f].face.a, w) - faces[f].face.c;
    if (face_modules_[f].contains({offset})) out[h] = true;
  }
  return out;
}

bool Hull::is_nonsingular(const QFVector& w) const {
  CutType c = cut_type(w);
  return std::none_of(c.begin(), c.end(), [](bool b) { return b; });
}

std::vector<HullPoint> Hull::fiber(const TorusPoint& z) const {
  TorusPoint zc = E_.canonical(z.v);
  CutType cut = cut_type(E_.internal(zc));
  std::vector<QFVector> normals;
  std::vector<std::size_t> index;
  for (std::size_t h = 0; h < cut.size(); ++h) {
    if (cut[h]) {
      normals.push_back(E_.arrangement().normals()[h]);
      index.push_back(h);
    }
  }
  Arrangement sub(std::move(normals), E_.n());
  std::vector<HullPoint> out;
  for (const auto& t : enumerate_cones(sub).cones) {
    if (!is_chamber(t)) continue;
    ConeType c(cut.size(), kUndefined);
    for (std::size_t i = 0; i < index.size(); ++i) c[index[i]] = t[i];
    out.push_back({zc, std::move(c)});
  }
  return out;
}

bool Hull::is_valid(const HullPoint& p) const {
  if (p.c.size() != E_.arrangement().size()) return false;
  if (E_.canonical(p.z.v) != p.z) return false;
  CutType cut = cut_type(E_.internal(p.z));
  std::vector<QFVector> normals;
  ConeType restricted;
  for (std::size_t h = 0; h < cut.size(); ++h) {
    bool defined = p.c[h] != kUndefined;
    if (defined != cut[h]) return false;
    if (!defined) continue;
    if (p.c[h] != 1 && p.c[h] != -1) return false;
    normals.push_back(E_.arrangement().normals()[h]);
    restricted.push_back(p.c[h]);
  }
  return Arrangement(std::move(normals), E_.n()).feasible(restricted);
}

void Hull::validate(const HullPoint& p) const {
  if (!is_valid(p)) {
    throw InvariantViolation("(" + E_.str(p.z) + ", " + cone_str(p.c) + ") is not a hull point");
  }
}

PointPattern Hull::selector(const HullPoint& p, const Rational& radius) const {
  return selector_at(E_.internal(p.z), E_.physical(p.z), p.c, radius);
}

PointPattern Hull::selector_at(const QFVector& w, const QFVector& s, const ConeType& c,
                               const Rational& radius) const {
  const Scheme& scheme = E_.scheme();
  const auto& faces = E_.faces().faces;
  // Face test: side * (a.(w - gamma*) - c_f) > 0, or = 0 with c(H_f) = side.
  struct FaceD {
    std::vector<double> a;
    double base;
    QF base_exact;
  };
  std::vector<FaceD> fd;
  for (const auto& rf : faces) {
    QF base = dot(rf.face.a, w) - rf.face.c;
    fd.push_back({to_double(rf.face.a), base.to_double(), base});
  }
  const QF r2(radius * radius);
  const double r2d = r2.to_double();
  std::vector<double> sd = to_double(s);

  PointPattern out;
  out.shift = s;
  for_each_candidate(scheme, E_.window(), w, Ball{s, radius}, [&](const Coeffs& m) {
    const std::size_t n = scheme.n();
    const std::size_t d = scheme.d();
    std::vector<double> star_d(n, 0.0), phys_d(d, 0.0);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      for (std::size_t j = 0; j < n; ++j) star_d[j] += static_cast<double>(m[i]) * scheme.star_approx()[i][j];
      for (std::size_t j = 0; j < d; ++j) phys_d[j] += static_cast<double>(m[i]) * scheme.phys_approx()[i][j];
    }
    std::optional<QFVector> star_exact;
    for (std::size_t f = 0; f < faces.size(); ++f) {
      const int side = faces[f].face.side;
      double v = fd[f].base;
      for (std::size_t j = 0; j < n; ++j) v -= fd[f].a[j] * star_d[j];
      if (side * v > kTol) continue;
      if (side * v < -kTol) return;
      if (!star_exact) star_exact = scheme.star_of(m);
      int sv = side * (fd[f].base_exact - dot(faces[f].face.a, *star_exact)).sign();
      if (sv > 0) continue;
      if (sv < 0) return;
      if (c[faces[f].hyperplane] != side) return;
    }
    double dist2 = 0;
    for (std::size_t j = 0; j < d; ++j) dist2 += (phys_d[j] - sd[j]) * (phys_d[j] - sd[j]);
    QFVector pos = scheme.phys_of(m) - s;
    if (dist2 > r2d * (1 - kTol) - kTol && !(norm2(pos) <= r2)) return;
    out.points.push_back({to_integers(m), std::move(pos)});
  });
  std::sort(out.points.begin(), out.points.end(),
            [](const LatticePoint& x, const LatticePoint& y) { return x.m < y.m; });
  return out;
}

HullPoint Hull::act(const HullPoint& p, const HullElement& g) const {
  TorusPoint z = E_.add(p.z, g.z);
  CutType cut = cut_type(E_.internal(z));
  ConeType c(cut.size(), kUndefined);
  for (std::size_t h = 0; h < cut.size(); ++h) {
    if (cut[h]) c[h] = g.t[h] == 0 ? p.c[h] : g.t[h];
  }
  HullPoint out{std::move(z), std::move(c)};
  validate(out);
  return out;
}

std::vector<Rational> Hull::default_schedule(int steps) {
  std::vector<Rational> out;
  Rational delta(1, 4);
  for (int i = 0; i < steps; ++i) {
    out.push_back(delta);
    delta /= 2;
  }
  return out;
}

Rational Hull::stability_radius(const QFVector& w, const QFVector& center, const Rational& radius) const {
  const Scheme& scheme = E_.scheme();
  const std::size_t n = scheme.n();
  const std::size_t d = scheme.d();
  const Rational reach(1, 4);
  Rational best = reach;
  std::vector<Rational> lo(n + d), hi(n + d);
  QFVector wl = w + E_.window().lower();
  QFVector wu = w + E_.window().upper();
  for (std::size_t j = 0; j < n; ++j) {
    lo[j] = rational_below(wl[j]) - reach;
    hi[j] = rational_above(wu[j]) + reach;
  }
  for (std::size_t j = 0; j < d; ++j) {
    lo[n + j] = rational_below(center[j] - QF(radius));
    hi[n + j] = rational_above(center[j] + QF(radius));
  }
  const auto& faces = E_.faces().faces;
  std::vector<QF> base;
  std::vector<std::vector<double>> ad;
  std::vector<double> based;
  std::vector<Rational> norm_above;
  for (const auto& rf : faces) {
    base.push_back(dot(rf.face.a, w) - rf.face.c);
    based.push_back(base.back().to_double());
    ad.push_back(to_double(rf.face.a));
    norm_above.push_back(sqrt_above(norm2(rf.face.a)));
  }
  std::vector<double> cd = to_double(center);
  const double r2 = radius.get_d() * radius.get_d();
  const double skip = 2 * reach.get_d() * 4;
  enumerate_box(scheme.basis(), zeros(n + d), lo, hi, [&](const Coeffs& m, const std::vector<double>& x) {
    double dist2 = 0;
    for (std::size_t j = 0; j < d; ++j) dist2 += (x[n + j] - cd[j]) * (x[n + j] - cd[j]);
    if (dist2 > r2 * (1 + kTol) + kTol) return;
    std::optional<QFVector> star;
    for (std::size_t f = 0; f < faces.size(); ++f) {
      double v = based[f];
      for (std::size_t j = 0; j < n; ++j) v -= ad[f][j] * x[j];
      if (std::abs(v) > skip) continue;
      if (!star) star = scheme.star_of(m);
      QF val = base[f] - dot(faces[f].face.a, *star);
      if (val.is_zero()) continue;
      Rational margin = rational_below(val.abs(), 60) / norm_above[f];
      if (margin < best) best = margin;
    }
  });
  return best;
}

Hull::NetLimit Hull::net_limit(const HullPoint& p, const HullElement& g, const Rational& radius,
                               const std::vector<Rational>& schedule) const {
  NetLimit out;
  const QFVector wp = E_.internal(p.z);
  const QFVector sp = E_.physical(p.z);
  const QFVector wg = E_.internal(g.z);
  const QFVector sg = E_.physical(g.z);
  out.certified = stability_radius(wp + wg, sp + sg, radius);
  std::optional<PointPattern> prev;
  for (const Rational& delta : schedule) {
    // Translating by gamma = -m moves the internal parameter by star(m),
    // which lies in wg + (plain cone head of radius delta).
    std::vector<Integer> m = E_.search_head(wg, g.t, delta);
    PointPattern patch = selector_at(wp + E_.scheme().star_of(m), sp + sg, p.c, radius);
    out.deltas.push_back(delta);
    std::vector<Integer> gamma;
    for (const auto& v : m) gamma.push_back(-v);
    out.gammas.push_back(std::move(gamma));
    if (delta > out.certified) {
      prev.reset();
      continue;
    }
    if (prev && same_positions(*prev, patch)) {
      out.patch = std::move(patch);
      out.stabilized = true;
      return out;
    }
    prev = std::move(patch);
  }
  if (prev) out.patch = std::move(*prev);
  return out;
}

}  // namespace modelset
