#include "modelset/cps.hpp"

#include <algorithm>
#include <cmath>

#include "modelset/subgroup.hpp"

namespace modelset {

namespace {

bool lex_less(const QFVector& x, const QFVector& y) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    int s = (x[i] - y[i]).sign();
    if (s != 0) return s < 0;
  }
  return false;
}

QF cross(const QFVector& u, const QFVector& v) { return u[0] * v[1] - u[1] * v[0]; }

void check_field(const QFVector& v, long D) {
  for (const QF& x : v) {
    if (!x.is_rational() && x.D() != D) throw ValidationError("scalar " + x.str() + " is not in Q(sqrt " + std::to_string(D) + ")");
  }
}

// Strictly convex hull, counterclockwise from the lexicographic minimum.
std::vector<QFVector> convex_hull(std::vector<QFVector> pts) {
  std::sort(pts.begin(), pts.end(), lex_less);
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  std::vector<QFVector> hull;
  auto turn = [](const QFVector& o, const QFVector& a, const QFVector& b) { return cross(a - o, b - o).sign(); };
  for (int pass = 0; pass < 2; ++pass) {
    std::size_t start = hull.size();
    for (const auto& p : pts) {
      while (hull.size() >= start + 2 && turn(hull[hull.size() - 2], hull.back(), p) <= 0) hull.pop_back();
      hull.push_back(p);
    }
    hull.pop_back();
    std::reverse(pts.begin(), pts.end());
  }
  return hull;
}

}  // namespace

Scheme::Scheme(long D, std::size_t d, std::size_t n, std::vector<QFVector> phys, std::vector<QFVector> star)
    : D_(D), d_(d), n_(n), phys_(std::move(phys)), star_(std::move(star)) {
  if (d_ == 0 || n_ == 0) throw ValidationError("dimensions d and n must be positive");
  if (phys_.size() != n_ + d_ || star_.size() != n_ + d_) {
    throw ValidationError("a scheme needs exactly n + d generators");
  }
  for (std::size_t i = 0; i < phys_.size(); ++i) {
    if (phys_[i].size() != d_) throw ValidationError("physical generator has wrong dimension");
    if (star_[i].size() != n_) throw ValidationError("internal generator has wrong dimension");
    check_field(phys_[i], D_);
    check_field(star_[i], D_);
  }
  const std::size_t r = phys_.size();
  basis_ = QFMatrix(r, r);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < n_; ++j) basis_(j, i) = star_[i][j];
    for (std::size_t j = 0; j < d_; ++j) basis_(n_ + j, i) = phys_[i][j];
  }
  try {
    basis_inv_ = inverse(basis_);
  } catch (const SingularMatrix&) {
    throw ValidationError("generators do not span a lattice in R^(n+d)");
  }
  std::vector<QFVector> forms(d_, QFVector(r));
  for (std::size_t j = 0; j < d_; ++j) {
    for (std::size_t i = 0; i < r; ++i) forms[j][i] = phys_[i][j];
  }
  if (!integer_kernel_of_forms(forms, r).empty()) {
    throw ValidationError("projection to physical space is not injective on the lattice");
  }
  for (std::size_t i = 0; i < r; ++i) {
    phys_d_.push_back(to_double(phys_[i]));
    star_d_.push_back(to_double(star_[i]));
  }
}

namespace {

template <typename C>
QFVector combine_generators(const std::vector<QFVector>& gens, const C& m, std::size_t dim) {
  if (m.size() != gens.size()) throw ValidationError("coefficient count mismatch");
  QFVector out(dim);
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (m[i] == 0) continue;
    QF c{Rational(m[i])};
    for (std::size_t j = 0; j < dim; ++j) {
      if (!gens[i][j].is_zero()) out[j] += c * gens[i][j];
    }
  }
  return out;
}

}  // namespace

QFVector Scheme::star_of(const std::vector<Integer>& m) const { return combine_generators(star_, m, n_); }
QFVector Scheme::phys_of(const std::vector<Integer>& m) const { return combine_generators(phys_, m, d_); }
QFVector Scheme::star_of(const Coeffs& m) const { return combine_generators(star_, m, n_); }
QFVector Scheme::phys_of(const Coeffs& m) const { return combine_generators(phys_, m, d_); }

std::vector<std::vector<Integer>> Scheme::stabilizer(const std::vector<QFVector>& subspace) const {
  std::vector<QFVector> ann = orthogonal_complement(subspace, n_);
  std::vector<QFVector> forms;
  for (const auto& b : ann) {
    QFVector row(r());
    for (std::size_t i = 0; i < r(); ++i) row[i] = dot(b, star_[i]);
    forms.push_back(std::move(row));
  }
  return integer_kernel_of_forms(forms, r());
}

QF normalize_normal(QFVector& a) {
  for (const QF& x : a) {
    if (!x.is_zero()) {
      QF f = x;
      for (QF& y : a) y /= f;
      return f;
    }
  }
  throw ValidationError("zero face normal");
}

Window::Window(std::vector<QFVector> vertices, std::size_t n) : n_(n), vertices_(std::move(vertices)) {
  if (n_ == 1) {
    faces_.push_back({{QF(1)}, vertices_[0][0], 1});
    faces_.push_back({{QF(1)}, vertices_[1][0], -1});
  } else {
    for (std::size_t k = 0; k < vertices_.size(); ++k) {
      const QFVector& p = vertices_[k];
      const QFVector& q = vertices_[(k + 1) % vertices_.size()];
      QFVector a{-(q[1] - p[1]), q[0] - p[0]};
      QF f = normalize_normal(a);
      faces_.push_back({a, dot(a, p), f.sign()});
    }
  }
  QFVector c = centroid();
  for (const Face& f : faces_) {
    if (f.side * (dot(f.a, c) - f.c).sign() <= 0) throw ValidationError("window is not full-dimensional");
  }
}

Window Window::from_vertices(std::vector<QFVector> vertices) {
  if (vertices.empty()) throw ValidationError("window has no vertices");
  const std::size_t n = vertices.front().size();
  for (const auto& v : vertices) {
    if (v.size() != n) throw ValidationError("window vertices of mixed dimension");
  }
  if (n == 1) {
    if (vertices.size() != 2) throw ValidationError("an interval window needs exactly 2 endpoints");
    std::sort(vertices.begin(), vertices.end(), lex_less);
    if (vertices[0] == vertices[1]) throw ValidationError("degenerate window");
    return Window(std::move(vertices), 1);
  }
  if (n != 2) throw ValidationError("windows are supported in dimension 1 and 2");
  std::vector<QFVector> hull = convex_hull(vertices);
  if (hull.size() < 3) throw ValidationError("degenerate window");
  if (hull.size() != vertices.size()) {
    throw ValidationError("window vertices are not in strictly convex position");
  }
  return Window(std::move(hull), 2);
}

Window Window::from_halfspaces(const std::vector<Face>& given, std::size_t n) {
  std::vector<Face> faces;
  for (Face f : given) {
    if (f.a.size() != n) throw ValidationError("half-space normal has wrong dimension");
    if (f.side != 1 && f.side != -1) throw ValidationError("half-space side must be +1 or -1");
    QF g = normalize_normal(f.a);
    f.c /= g;
    if (g.sign() < 0) f.side = -f.side;
    faces.push_back(std::move(f));
  }
  auto satisfied = [&](const QFVector& x) {
    for (const Face& f : faces) {
      if (f.side * (dot(f.a, x) - f.c).sign() < 0) return false;
    }
    return true;
  };
  std::vector<QFVector> pts;
  if (n == 1) {
    for (const Face& f : faces) {
      QFVector p{f.c};
      if (satisfied(p)) pts.push_back(p);
    }
  } else if (n == 2) {
    for (std::size_t i = 0; i < faces.size(); ++i) {
      for (std::size_t j = i + 1; j < faces.size(); ++j) {
        QFMatrix A = QFMatrix::from_rows({faces[i].a, faces[j].a}, 2);
        if (rank(A) < 2) continue;
        QFVector p = solve(A, {faces[i].c, faces[j].c});
        if (satisfied(p)) pts.push_back(p);
      }
    }
  } else {
    throw ValidationError("windows are supported in dimension 1 and 2");
  }
  std::sort(pts.begin(), pts.end(), lex_less);
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  std::vector<QFVector> verts = n == 2 ? convex_hull(pts) : pts;
  if (verts.size() < n + 1) throw ValidationError("half-spaces do not bound a full-dimensional polytope");
  Window w(std::move(verts), n);
  // Cross-check: every derived face must be one of the given half-spaces,
  // otherwise the given region was unbounded.
  for (const Face& df : w.faces_) {
    bool found = std::any_of(faces.begin(), faces.end(), [&](const Face& f) {
      return f.a == df.a && f.c == df.c && f.side == df.side;
    });
    if (!found) throw ValidationError("half-spaces do not describe a compact polytope");
  }
  return w;
}

QFVector Window::centroid() const {
  QFVector c(n_);
  for (const auto& v : vertices_) c = c + v;
  return QF(Rational(1, static_cast<long>(vertices_.size()))) * c;
}

bool Window::contains(const QFVector& x, bool closed) const {
  for (const Face& f : faces_) {
    int s = f.side * (dot(f.a, x) - f.c).sign();
    if (s < 0 || (s == 0 && !closed)) return false;
  }
  return true;
}

QFVector Window::lower() const {
  QFVector out = vertices_.front();
  for (const auto& v : vertices_) {
    for (std::size_t j = 0; j < n_; ++j) out[j] = std::min(out[j], v[j]);
  }
  return out;
}

QFVector Window::upper() const {
  QFVector out = vertices_.front();
  for (const auto& v : vertices_) {
    for (std::size_t j = 0; j < n_; ++j) out[j] = std::max(out[j], v[j]);
  }
  return out;
}

Window canonical_window(const Scheme& scheme) {
  const auto& gens = scheme.star();
  for (const auto& e : gens) {
    if (is_zero(e)) throw ValidationError("degenerate window");
  }
  if (scheme.n() == 1) {
    QF lo, hi;
    for (const auto& e : gens) {
      if (e[0].sign() < 0) lo += e[0];
      else hi += e[0];
    }
    return Window::from_vertices({{lo}, {hi}});
  }
  if (scheme.n() != 2) throw ValidationError("canonical window needs internal dimension 2");
  // Edge directions: each generator oriented into the half-plane x > 0 (or
  // straight up), sorted by angle, parallel ones merged.
  std::vector<QFVector> dirs;
  QFVector start(2);
  for (const auto& e : gens) {
    bool forward = e[0].sign() > 0 || (e[0].is_zero() && e[1].sign() > 0);
    dirs.push_back(forward ? e : -e);
    if (!forward) start = start + e;
  }
  std::stable_sort(dirs.begin(), dirs.end(), [](const QFVector& u, const QFVector& v) { return cross(u, v).sign() > 0; });
  std::vector<QFVector> merged;
  for (const auto& u : dirs) {
    if (!merged.empty() && cross(merged.back(), u).is_zero()) merged.back() = merged.back() + u;
    else merged.push_back(u);
  }
  if (merged.size() < 2) throw ValidationError("degenerate window");
  std::vector<QFVector> verts{start};
  for (const auto& u : merged) verts.push_back(verts.back() + u);
  for (std::size_t k = 0; k + 1 < merged.size(); ++k) verts.push_back(verts.back() - merged[k]);
  if (verts.back() - merged.back() != start) throw InvariantViolation("zonotope boundary does not close");
  return Window::from_vertices(std::move(verts));
}

FaceData reversed_faces(const Window& window) {
  FaceData out;
  out.n = window.dim();
  for (const Face& f : window.faces()) {
    if (std::find(out.hyperplanes.begin(), out.hyperplanes.end(), f.a) == out.hyperplanes.end()) {
      out.hyperplanes.push_back(f.a);
    }
  }
  std::sort(out.hyperplanes.begin(), out.hyperplanes.end(), lex_less);
  for (const Face& f : window.faces()) {
    std::size_t h = static_cast<std::size_t>(
        std::find(out.hyperplanes.begin(), out.hyperplanes.end(), f.a) - out.hyperplanes.begin());
    out.faces.push_back({{f.a, -f.c, -f.side}, h});
  }
  return out;
}

std::vector<QFVector> PointPattern::positions() const {
  std::vector<QFVector> out;
  out.reserve(points.size());
  for (const auto& p : points) out.push_back(p.pos);
  std::sort(out.begin(), out.end(), lex_less);
  return out;
}

bool same_positions(const PointPattern& x, const PointPattern& y) {
  return x.size() == y.size() && x.positions() == y.positions();
}

void for_each_candidate(const Scheme& scheme, const Window& window, const QFVector& w, const Ball& ball,
                        const std::function<void(const Coeffs& m)>& visit) {
  const std::size_t n = scheme.n();
  const std::size_t d = scheme.d();
  if (w.size() != n || ball.center.size() != d) throw ValidationError("shift or ball center has wrong dimension");
  if (sgn(ball.radius) < 0) return;
  std::vector<Rational> lo(n + d), hi(n + d);
  QFVector wl = w + window.lower();
  QFVector wu = w + window.upper();
  for (std::size_t j = 0; j < n; ++j) {
    lo[j] = rational_below(wl[j]);
    hi[j] = rational_above(wu[j]);
  }
  for (std::size_t j = 0; j < d; ++j) {
    lo[n + j] = rational_below(ball.center[j] - QF(ball.radius));
    hi[n + j] = rational_above(ball.center[j] + QF(ball.radius));
  }
  struct FaceD {
    std::vector<double> a;
    double c;
    int side;
  };
  std::vector<FaceD> faces;
  std::vector<double> wd = to_double(w);
  for (const Face& f : window.faces()) {
    FaceD fd{to_double(f.a), f.c.to_double(), f.side};
    for (std::size_t j = 0; j < n; ++j) fd.c += fd.a[j] * wd[j];
    faces.push_back(std::move(fd));
  }
  std::vector<double> cd = to_double(ball.center);
  double r2 = ball.radius.get_d() * ball.radius.get_d();
  constexpr double tol = 1e-7;
  enumerate_box(scheme.basis(), zeros(n + d), lo, hi, [&](const Coeffs& m, const std::vector<double>& x) {
    for (const FaceD& f : faces) {
      double v = -f.c;
      for (std::size_t j = 0; j < n; ++j) v += f.a[j] * x[j];
      if (f.side * v < -tol) return;
    }
    double dist2 = 0;
    for (std::size_t j = 0; j < d; ++j) {
      double t = x[n + j] - cd[j];
      dist2 += t * t;
    }
    if (dist2 > r2 * (1 + tol) + tol) return;
    visit(m);
  });
}

namespace {

std::vector<Integer> to_integers(const Coeffs& m) {
  std::vector<Integer> out;
  out.reserve(m.size());
  for (long v : m) out.emplace_back(v);
  return out;
}

bool in_ball(const QFVector& p, const Ball& ball) {
  QFVector diff = p - ball.center;
  return norm2(diff) <= QF(ball.radius * ball.radius);
}

void sort_points(std::vector<LatticePoint>& pts) {
  std::sort(pts.begin(), pts.end(), [](const LatticePoint& x, const LatticePoint& y) { return x.m < y.m; });
}

}  // namespace

PointPattern generate_pattern(const Scheme& scheme, const Window& window, const QFVector& w, const Ball& ball,
                              bool closed) {
  PointPattern out;
  out.shift = zeros(scheme.d());
  for_each_candidate(scheme, window, w, ball, [&](const Coeffs& m) {
    QFVector pos = scheme.phys_of(m);
    if (!in_ball(pos, ball)) return;
    if (!window.contains(scheme.star_of(m) - w, closed)) return;
    out.points.push_back({to_integers(m), std::move(pos)});
  });
  sort_points(out.points);
  return out;
}

std::vector<QFVector> hyperplane_basis(const QFVector& normal) {
  return kernel_basis(QFMatrix::from_rows({normal}, normal.size()));
}

ValidationReport validate_almost_canonical(const Scheme& scheme, const Window& window) {
  ValidationReport report;
  report.pass = true;
  FaceData fd = reversed_faces(window);
  for (const QFVector& normal : fd.hyperplanes) {
    HyperplaneReport hr;
    hr.normal = normal;
    std::vector<QFVector> L = hyperplane_basis(normal);
    std::vector<QFVector> images;
    for (const auto& m : scheme.stabilizer(L)) images.push_back(scheme.star_of(m));
    hr.stabilizer_star_basis = ZModule(images, scheme.n()).basis();
    hr.stabilizer_rank = hr.stabilizer_star_basis.size();
    hr.dense = is_dense(FGSubgroup(L, images, scheme.n()));
    report.pass = report.pass && hr.dense;
    report.hyperplanes.push_back(std::move(hr));
  }
  return report;
}

}  // namespace modelset
