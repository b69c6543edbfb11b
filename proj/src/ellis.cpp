#include "modelset/ellis.hpp"

#include <algorithm>

#include "modelset/enumerate.hpp"

namespace modelset {

EllisStructure::EllisStructure(const Scheme& scheme, const Window& window)
    : window_(window), ctx_(scheme, window_), semigroup_(enumerate_cones(ctx_.arrangement)) {
  cones_.reserve(semigroup_.size());
  for (const auto& t : semigroup_.cones) cones_.push_back(analyze_cone(ctx_, t));
}

std::vector<std::size_t> EllisStructure::nontrivial_indices() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < cones_.size(); ++i) {
    if (cones_[i].nontrivial) out.push_back(i);
  }
  return out;
}

TorusPoint EllisStructure::canonical(const QFVector& v) const {
  if (v.size() != n() + d()) throw ValidationError("torus point has wrong dimension");
  QFVector x = scheme().sigma_coordinates(v);
  for (QF& c : x) c -= QF(Rational(c.floor()));
  return {scheme().basis() * x};
}

TorusPoint EllisStructure::torus(const QFVector& w, const QFVector& s) const {
  if (w.size() != n() || s.size() != d()) throw ValidationError("torus point has wrong dimension");
  QFVector v = w;
  v.insert(v.end(), s.begin(), s.end());
  return canonical(v);
}

QFVector EllisStructure::internal(const TorusPoint& z) const {
  return QFVector(z.v.begin(), z.v.begin() + static_cast<std::ptrdiff_t>(n()));
}

QFVector EllisStructure::physical(const TorusPoint& z) const {
  return QFVector(z.v.begin() + static_cast<std::ptrdiff_t>(n()), z.v.end());
}

TorusPoint EllisStructure::add(const TorusPoint& x, const TorusPoint& y) const { return canonical(x.v + y.v); }

std::string EllisStructure::str(const TorusPoint& z) const {
  return "[" + modelset::str(internal(z)) + ";" + modelset::str(physical(z)) + "]_Σ";
}

bool EllisStructure::is_member(const TorusPoint& z, const ConeType& t) const {
  const PlainCone& c = cone(t);
  return c.nontrivial && allowed(ctx_, c, internal(z));
}

HullElement EllisStructure::element(const TorusPoint& z, const ConeType& t) const {
  TorusPoint zc = canonical(z.v);
  const PlainCone& c = cone(t);
  if (!c.nontrivial) throw ValidationError("cone type " + cone_str(t) + " is trivial");
  if (!allowed(ctx_, c, internal(zc))) {
    throw ValidationError("torus point " + str(zc) + " is not allowed with cone type " + cone_str(t));
  }
  return {std::move(zc), t};
}

HullElement EllisStructure::translation(const std::vector<Integer>& m) const {
  return {torus(zeros(n()), scheme().phys_of(m)), origin()};
}

HullElement EllisStructure::compose(const HullElement& g, const HullElement& h) const {
  HullElement out{add(g.z, h.z), product(g.t, h.t)};
  std::size_t idx = semigroup_.index_of(out.t);
  if (!cones_[idx].nontrivial || !allowed(ctx_, cones_[idx], internal(out.z))) {
    throw InvariantViolation("composition left the Ellis semigroup: " + str(out.z) + " " + cone_str(out.t));
  }
  return out;
}

bool EllisStructure::is_invertible(const HullElement& g) const {
  return is_origin(g.t) && scheme().gamma_star().contains(internal(g.z));
}

std::vector<HullElement> EllisStructure::idempotents() const {
  std::vector<HullElement> out;
  TorusPoint zero = canonical(zeros(n() + d()));
  for (std::size_t i : nontrivial_indices()) out.push_back({zero, semigroup_.cones[i]});
  return out;
}

std::vector<ConeType> EllisStructure::minimal_ideal_types() const {
  std::vector<ConeType> out;
  for (std::size_t i : minimal_ideal(semigroup_, nontrivial_indices())) out.push_back(semigroup_.cones[i]);
  return out;
}

std::vector<EllisComponent> EllisStructure::components() const {
  std::vector<EllisComponent> out;
  for (std::size_t i : nontrivial_indices()) {
    const auto& V = cones_[i].closure.V;
    auto it = std::find_if(out.begin(), out.end(), [&](const EllisComponent& c) {
      return c.V.size() == V.size() && span_contains(c.V, V, n());
    });
    if (it == out.end()) out.push_back({V, {semigroup_.cones[i]}});
    else it->types.push_back(semigroup_.cones[i]);
  }
  std::stable_sort(out.begin(), out.end(), [](const EllisComponent& a, const EllisComponent& b) { return a.dim() > b.dim(); });
  return out;
}

bool EllisStructure::is_member(const InternalElement& g) const {
  const PlainCone& c = cone(g.t);
  return c.nontrivial && allowed(ctx_, c, g.w);
}

bool EllisStructure::in_plain_cone(const QFVector& u, const ConeType& t) const {
  const PlainCone& c = cone(t);
  if (!span_contains(c.closure.V, {u}, n())) return false;
  const auto& normals = ctx_.arrangement.normals();
  for (std::size_t i = 0; i < normals.size(); ++i) {
    if (dot(normals[i], u).sign() != t[i]) return false;
  }
  return true;
}

std::optional<Rational> EllisStructure::neighborhood_delta(const InternalElement& cand, const InternalElement& target,
                                                           const Rational& eps) const {
  if (sgn(eps) <= 0) return std::nullopt;
  const PlainCone& ct = cone(target.t);
  const PlainCone& cc = cone(cand.t);
  const QFVector diff = cand.w - target.w;
  // (a) V_t' inside V_t, (b) w' - w in V_t.
  if (!span_contains(ct.closure.V, cc.closure.V, n())) return std::nullopt;
  if (!span_contains(ct.closure.V, {diff}, n())) return std::nullopt;
  // (c) |w' - w| < eps.
  QF dist2 = norm2(diff);
  if (!(dist2 < QF(eps * eps))) return std::nullopt;
  // (d) side conditions on the hyperplanes where the target cone is open.
  const auto& normals = ctx_.arrangement.normals();
  Rational delta = eps;
  if (!dist2.is_zero()) {
    // Rational rho >= |w' - w| with rho < eps, by bisection.
    Rational lo = sqrt_below(dist2);
    Rational rho = sqrt_above(dist2);
    for (int iter = 0; iter < 400 && rho >= eps; ++iter) {
      Rational mid = (lo + rho) / 2;
      if (QF(mid * mid) >= dist2) rho = mid;
      else lo = mid;
    }
    if (rho >= eps) return std::nullopt;
    delta = eps - rho;
  }
  for (std::size_t i = 0; i < normals.size(); ++i) {
    int s = target.t[i];
    if (s == 0) continue;
    QF v = dot(normals[i], diff);
    int sv = v.sign();
    if (sv == s) {
      // Heads of radius below |a.(w'-w)| / |a| stay on the same side.
      Rational bound = rational_below(v.abs(), 40) / sqrt_above(norm2(normals[i]));
      if (sgn(bound) <= 0) bound = rational_below(v.abs(), 200) / sqrt_above(norm2(normals[i]));
      delta = std::min(delta, bound);
    } else if (!(sv == 0 && cand.t[i] == s)) {
      return std::nullopt;
    }
  }
  if (sgn(delta) <= 0) return std::nullopt;
  return delta;
}

bool EllisStructure::in_basic_neighborhood(const InternalElement& cand, const InternalElement& target,
                                           const Rational& eps) const {
  return neighborhood_delta(cand, target, eps).has_value();
}

std::vector<Integer> EllisStructure::search_head(const QFVector& w0, const ConeType& t, const Rational& delta,
                                                 long max_radius) const {
  const PlainCone& c = cone(t);
  if (!c.nontrivial) throw ValidationError("cone type " + cone_str(t) + " is trivial");
  const Scheme& s = scheme();
  const auto& V = c.closure.V;
  auto base = coset_meets_subspace(w0, s.gamma_star(), V);
  if (!base) throw ValidationError("internal vector is not allowed with cone type " + cone_str(t));
  // star(m0) lies in w0 + V; the search runs over m0 + K c with K spanning
  // the integer vectors whose star image lies in V.
  const std::vector<Integer>& m0 = *base;
  std::vector<std::vector<Integer>> K = s.stabilizer(V);
  const std::size_t kv = V.size();
  const std::size_t rows = kv + s.d();

  QFMatrix P;  // left inverse of the V basis
  if (kv > 0) {
    QFMatrix Vm = QFMatrix::from_columns(V, n());
    P = inverse(Vm.transpose() * Vm) * Vm.transpose();
  }
  QFVector u0 = s.star_of(m0) - w0;
  QFVector offset(rows);
  if (kv > 0) {
    QFVector y0 = P * u0;
    std::copy(y0.begin(), y0.end(), offset.begin());
  }
  QFVector p0 = s.phys_of(m0);
  std::copy(p0.begin(), p0.end(), offset.begin() + static_cast<std::ptrdiff_t>(kv));
  QFMatrix B(rows, K.size());
  for (std::size_t j = 0; j < K.size(); ++j) {
    QFVector col_star = s.star_of(K[j]);
    QFVector col_phys = s.phys_of(K[j]);
    if (kv > 0) {
      QFVector y = P * col_star;
      for (std::size_t i = 0; i < kv; ++i) B(i, j) = y[i];
    }
    for (std::size_t i = 0; i < s.d(); ++i) B(kv + i, j) = col_phys[i];
  }
  std::vector<Rational> ylo(kv), yhi(kv);
  for (std::size_t i = 0; i < kv; ++i) {
    QF row_sum;
    for (std::size_t j = 0; j < n(); ++j) row_sum += P(i, j).abs();
    Rational beta = rational_above(row_sum) * delta;
    ylo[i] = -beta;
    yhi[i] = beta;
  }
  const QF delta2(delta * delta);

  for (long radius = 4; radius <= max_radius; radius *= 2) {
    std::vector<Rational> lo = ylo, hi = yhi;
    for (std::size_t i = 0; i < s.d(); ++i) {
      lo.push_back(Rational(-radius));
      hi.push_back(Rational(radius));
    }
    std::optional<std::vector<Integer>> best;
    QF best_norm;
    enumerate_box(B, offset, lo, hi, [&](const Coeffs& cc, const std::vector<double>&) {
      std::vector<Integer> m = m0;
      for (std::size_t j = 0; j < K.size(); ++j) {
        if (cc[j] == 0) continue;
        for (std::size_t i = 0; i < m.size(); ++i) m[i] += cc[j] * K[j][i];
      }
      QFVector u = s.star_of(m) - w0;
      if (!(norm2(u) < delta2)) return;
      const auto& normals = ctx_.arrangement.normals();
      for (std::size_t i = 0; i < normals.size(); ++i) {
        if (dot(normals[i], u).sign() != t[i]) return;
      }
      QF pn = norm2(s.phys_of(m));
      if (!best || pn < best_norm || (pn == best_norm && m < *best)) {
        best = std::move(m);
        best_norm = pn;
      }
    });
    if (best) return *best;
  }
  throw Error("no lattice point found in the cone head of " + cone_str(t) + " within the search cap");
}

}  // namespace modelset
