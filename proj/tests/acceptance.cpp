// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "modelset/cli.hpp"
#include "modelset/config.hpp"
#include "modelset/hull.hpp"
#include "oracles.hpp"

using namespace modelset;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

void require(Outcome& o, bool cond, const std::string& what) {
  if (!cond && o.pass) {
    o.pass = false;
    o.detail = "failed: " + what;
  }
}

struct Octagon {
  Model model = load_preset("octagon");
  EllisStructure E{model.scheme, model.window};
  Hull H{E};
};

QF q2(const char* text) { return QF::parse(text, 2); }

bool parallel(const QFVector& a, const QFVector& b) { return (a[0] * b[1] - a[1] * b[0]).is_zero(); }

bool in_head(const Arrangement& arr, const PlainCone& c, const ConeType& t, const QFVector& x, const QFVector& w,
             const Rational& radius) {
  QFVector u = x - w;
  if (!(norm2(u) < QF(radius * radius))) return false;
  for (std::size_t h = 0; h < arr.size(); ++h) {
    if (dot(arr.normals()[h], u).sign() != t[h]) return false;
  }
  return span_contains(c.closure.V, {u}, u.size());
}

Outcome check_hyperplanes() {
  Outcome o;
  std::ostringstream out, err;
  int code = run_cli({"cones", "--preset", "octagon"}, out, err);
  require(o, code == 0, "cones command exit code " + std::to_string(code));
  std::istringstream is(out.str());
  std::string line;
  std::getline(is, line);
  require(o, line == "hyperplanes: 4", "first line '" + line + "'");
  std::vector<QFVector> reported;
  for (int i = 0; i < 4 && std::getline(is, line); ++i) {
    auto a = line.find("span{(");
    auto b = line.find(")}", a);
    require(o, a != std::string::npos && b != std::string::npos, "direction missing in '" + line + "'");
    if (a == std::string::npos || b == std::string::npos) break;
    reported.push_back(parse_vector_text(line.substr(a + 6, b - a - 6), 2, 2));
  }
  // v1 = e1*, v2 = (e1* + e2*)/√2, v3 = e2*, v4 = (e2* - e1*)/√2.
  const QF r = q2("1/2√2");
  std::vector<QFVector> expected{{QF(1), QF(0)}, {r, r}, {QF(0), QF(1)}, {-r, r}};
  require(o, reported.size() == 4, "expected 4 directions");
  if (!o.pass) return o;
  std::set<std::size_t> used;
  for (const auto& e : expected) {
    int hits = 0;
    for (std::size_t i = 0; i < reported.size(); ++i) {
      if (parallel(e, reported[i])) {
        ++hits;
        used.insert(i);
      }
    }
    require(o, hits == 1, "direction (" + str(e) + ") matched " + std::to_string(hits) + " times");
  }
  require(o, used.size() == 4, "unmatched reported direction");
  if (o.pass) o.detail = "4 hyperplanes, directions match H1..H4";
  return o;
}

Outcome check_stratification() {
  Outcome o;
  Octagon oc;
  FaceSemigroup S = enumerate_cones(oc.E.arrangement());
  std::map<std::size_t, int> dims;
  for (std::size_t d : S.dims) ++dims[d];
  require(o, S.size() == 17, "cone count " + std::to_string(S.size()));
  require(o, dims[0] == 1 && dims[1] == 8 && dims[2] == 8, "dimension counts");
  if (o.pass) o.detail = "17 cones: dim0=1 dim1=8 dim2=8";
  return o;
}

Outcome check_nontriviality() {
  Outcome o;
  Octagon oc;
  std::map<std::size_t, int> dims;
  int nontrivial = 0;
  for (const auto& c : oc.E.cones()) {
    nontrivial += c.nontrivial;
    ++dims[c.plain_dim()];
  }
  require(o, nontrivial == 17, std::to_string(nontrivial) + " non-trivial cones");
  require(o, dims[0] == 1 && dims[1] == 8 && dims[2] == 8, "plain cone dimensions");
  if (o.pass) o.detail = "17/17 non-trivial, plain dims {0:1,1:8,2:8}";
  return o;
}

Outcome check_ellis_summary() {
  Outcome o;
  Octagon oc;
  int full = 0, cylinders = 0, identity = 0;
  bool cyl_two = true;
  for (const auto& c : oc.E.components()) {
    if (c.dim() == 2) full += static_cast<int>(c.types.size());
    if (c.dim() == 1) {
      ++cylinders;
      cyl_two = cyl_two && c.types.size() == 2;
    }
    if (c.dim() == 0) identity += c.types.size() == 1 && is_origin(c.types[0]);
  }
  require(o, full == 8, "full-torus types " + std::to_string(full));
  require(o, cylinders == 4 && cyl_two, "cylinder components");
  require(o, identity == 1, "identity component");
  if (o.pass) o.detail = "8 full-torus, 4 cylinders x 2 types, 1 identity";
  return o;
}

Outcome check_minimal_ideal() {
  Outcome o;
  Octagon oc;
  const FaceSemigroup& S = oc.E.semigroup();
  const std::size_t k = S.size();
  std::vector<unsigned> right(k, 0), left(k, 0);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      right[i] |= 1u << S.table[i][j];
      left[j] |= 1u << S.table[i][j];
    }
  }
  unsigned chambers = 0;
  for (std::size_t i = 0; i < k; ++i) chambers |= is_chamber(S.cones[i]) ? 1u << i : 0u;
  unsigned all = (1u << k) - 1, meet = all;
  std::set<unsigned> minimal_right;
  for (unsigned mask = 1; mask <= all; ++mask) {
    bool r = true, l = true;
    for (std::size_t i = 0; i < k && (r || l); ++i) {
      if (!(mask >> i & 1)) continue;
      r = r && (right[i] & ~mask) == 0;
      l = l && (left[i] & ~mask) == 0;
    }
    if (r && l) meet &= mask;
    if (r) {
      bool minimal = true;
      for (unsigned m : minimal_right) minimal = minimal && (m & mask) != m;
      if (minimal) {
        std::erase_if(minimal_right, [&](unsigned m) { return (mask & m) == mask; });
        minimal_right.insert(mask);
      }
    }
  }
  unsigned union_right = 0;
  for (unsigned m : minimal_right) union_right |= m;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  std::vector<std::size_t> lib = minimal_ideal(S, idx);
  unsigned lib_mask = 0;
  for (std::size_t i : lib) lib_mask |= 1u << i;
  require(o, std::popcount(chambers) == 8, "chamber count");
  require(o, meet == chambers, "intersection of two-sided ideals is not the chamber set");
  require(o, minimal_right.size() == 8 && union_right == chambers, "minimal right ideals");
  require(o, lib_mask == chambers && is_right_ideal(S, lib, idx), "library minimal ideal");
  if (o.pass) o.detail = "ideal = 8 chamber types; 8 singleton minimal right ideals";
  return o;
}

Outcome check_fiber_action() {
  Outcome o;
  Octagon oc;
  auto fiber = oc.H.fiber(oc.E.torus(zeros(2), zeros(2)));
  require(o, fiber.size() == 8, "fiber size " + std::to_string(fiber.size()));
  int chambers = 0, halflines = 0;
  for (const auto& g : oc.E.idempotents()) {
    std::set<ConeType> range;
    for (const auto& p : fiber) range.insert(oc.H.act(p, g).c);
    std::size_t dim = oc.E.cone(g.t).plain_dim();
    if (dim == 2) {
      ++chambers;
      require(o, range.size() == 1 && *range.begin() == g.t, "chamber " + cone_str(g.t) + " does not collapse");
    }
    if (dim == 1) {
      ++halflines;
      require(o, range.size() == 2, "half-line " + cone_str(g.t) + " range " + std::to_string(range.size()));
    }
  }
  require(o, chambers == 8 && halflines == 8, "idempotent counts");
  if (o.pass) o.detail = "fiber 8; chambers collapse to 1; half-lines range 2";
  return o;
}

Outcome check_semigroup_laws() {
  Outcome o;
  Octagon oc;
  const auto& E = oc.E;
  auto elems = E.idempotents();
  HullElement id = E.identity();
  std::set<ConeType> types;
  for (const auto& g : elems) types.insert(g.t);
  long assoc = 0;
  for (const auto& g : elems) {
    require(o, E.compose(g, id) == g && E.compose(id, g) == g, "identity law");
    require(o, E.compose(g, g) == g, "idempotency");
    for (const auto& h : elems) {
      HullElement gh = E.compose(g, h);
      require(o, types.count(gh.t) && E.is_member(gh.z, gh.t), "closure");
      for (const auto& k : elems) {
        require(o, E.compose(gh, k) == E.compose(g, E.compose(h, k)), "associativity");
        ++assoc;
      }
      require(o, geometric_product_oracle(E.arrangement(), g.t, h.t) == product(g.t, h.t),
              "geometric product " + cone_str(g.t) + "." + cone_str(h.t));
    }
  }
  require(o, assoc == 17 * 17 * 17, "triple count");
  if (o.pass) o.detail = std::to_string(assoc) + " triples, 289 geometric products";
  return o;
}

Outcome check_action_vs_limit() {
  Outcome o;
  Octagon oc;
  const Rational R(10);
  auto fiber = oc.H.fiber(oc.E.torus(zeros(2), zeros(2)));
  int agree = 0, total = 0;
  for (const auto& p : fiber) {
    for (const auto& g : oc.E.idempotents()) {
      ++total;
      auto lim = oc.H.net_limit(p, g, R, Hull::default_schedule(30));
      bool ok = lim.stabilized && same_positions(lim.patch, oc.H.selector(oc.H.act(p, g), R));
      agree += ok;
      require(o, ok, cone_str(p.c) + " . " + cone_str(g.t) + (lim.stabilized ? " differs" : " did not stabilize"));
    }
  }
  require(o, total == 136, "pair count");
  o.detail = std::to_string(agree) + "/" + std::to_string(total) + " pairs agree" + (o.pass ? "" : "; " + o.detail);
  return o;
}

std::vector<std::vector<double>> approx(const std::vector<QFVector>& vs) {
  std::vector<std::vector<double>> out;
  for (const auto& v : vs) out.push_back(to_double(v));
  return out;
}

Outcome check_density() {
  Outcome o;
  const QF s2 = q2("√2");
  struct Case {
    std::string name;
    bool library;
    bool numeric;
    bool expected;
  };
  std::vector<Case> cases;
  {
    FGSubgroup G({{QF(1)}}, {{QF(1)}, {s2}}, 1);
    cases.push_back({"Z+√2Z in R", is_dense(G), oracle::numerically_dense({{1.0}, {std::sqrt(2.0)}}, 10, 50), true});
  }
  {
    FGSubgroup G({{QF(1)}}, {{QF(1)}}, 1);
    cases.push_back({"Z in R", is_dense(G), oracle::numerically_dense({{1.0}}, 10, 50), false});
  }
  Model m = load_preset("octagon");
  {
    FGSubgroup G({{QF(1), QF(0)}, {QF(0), QF(1)}}, m.scheme.star(), 2);
    cases.push_back({"octagon Gamma* in R^2", is_dense(G), oracle::numerically_dense(m.scheme.star_approx(), 10, 50), true});
  }
  ValidationReport rep = validate_almost_canonical(m.scheme, m.window);
  for (std::size_t i = 0; i < rep.hyperplanes.size(); ++i) {
    const auto& h = rep.hyperplanes[i];
    QFVector dir = hyperplane_basis(h.normal)[0];
    QF len2 = norm2(dir);
    std::vector<std::vector<double>> coords;
    for (const auto& v : h.stabilizer_star_basis) coords.push_back({(dot(v, dir) / len2).to_double()});
    FGSubgroup G({dir}, h.stabilizer_star_basis, 2);
    bool lib = is_dense(G) && h.dense;
    cases.push_back({"Stab(H" + std::to_string(i + 1) + ")* in H" + std::to_string(i + 1), lib,
                     oracle::numerically_dense(coords, 10, 50), true});
  }
  for (const auto& c : cases) {
    require(o, c.library == c.numeric && c.library == c.expected,
            c.name + ": engine " + std::to_string(c.library) + ", numeric " + std::to_string(c.numeric));
  }
  if (o.pass) o.detail = std::to_string(cases.size()) + " subgroups agree";
  return o;
}

Outcome check_sandwich_equivariance() {
  Outcome o;
  Octagon oc;
  const Scheme& s = oc.model.scheme;
  const Window& W = oc.model.window;
  const Rational R(10);
  std::mt19937 rng(20240611);
  std::uniform_int_distribution<long> k(-3, 3);
  int singular = 0, hull_points = 0;
  for (int trial = 0; trial < 20; ++trial) {
    QFVector off = oracle::random_vector(rng, 2, 2, 2, 5);
    QFVector base = s.star_of(Coeffs{k(rng), k(rng), k(rng), k(rng)});
    QFVector w = trial % 3 == 0 ? base : trial % 3 == 1 ? base + QFVector{off[0], QF(0)} : off;
    singular += !oc.H.is_nonsingular(w);
    for (const auto& p : oc.H.fiber(oc.E.torus(w, zeros(2)))) {
      ++hull_points;
      QFVector wc = oc.E.internal(p.z), sc = oc.E.physical(p.z);
      auto open = oracle::coefficient_set(generate_pattern(s, W, wc, Ball{sc, R}, false));
      auto closed = oracle::coefficient_set(generate_pattern(s, W, wc, Ball{sc, R}, true));
      auto sel = oracle::coefficient_set(oc.H.selector(p, R));
      require(o, std::includes(sel.begin(), sel.end(), open.begin(), open.end()), "open pattern not in selector");
      require(o, std::includes(closed.begin(), closed.end(), sel.begin(), sel.end()), "selector not in closed pattern");
    }
    Coeffs g{k(rng), k(rng), k(rng), k(rng)};
    QFVector gp = s.phys_of(g), gs = s.star_of(g);
    for (bool closed : {false, true}) {
      PointPattern a = generate_pattern(s, W, w, Ball{gp, R}, closed);
      PointPattern b = generate_pattern(s, W, w - gs, Ball{zeros(2), R}, closed);
      std::vector<QFVector> pa, pb;
      for (const auto& pt : a.points) pa.push_back(pt.pos - gp);
      for (const auto& pt : b.points) pb.push_back(pt.pos);
      std::sort(pa.begin(), pa.end());
      std::sort(pb.begin(), pb.end());
      require(o, pa == pb, "translation equivariance");
    }
  }
  require(o, singular >= 10, "too few singular samples");
  if (o.pass) {
    o.detail = "20 w (" + std::to_string(singular) + " singular), " + std::to_string(hull_points) + " hull points";
  }
  return o;
}

Outcome check_fibonacci() {
  Outcome o;
  Model m = load_preset("fibonacci");
  EllisStructure E(m.scheme, m.window);
  Hull H(E);
  const QF tau = QF::parse("1/2+1/2√5", 5);
  auto fiber = H.fiber(E.torus({QF(0)}, {QF(0)}));
  require(o, fiber.size() == 2, "singular fiber size " + std::to_string(fiber.size()));
  PointPattern p = generate_pattern(m.scheme, m.window, m.shift, Ball{zeros(1), Rational(20)}, true);
  std::vector<QF> xs;
  for (const auto& pt : p.points) xs.push_back(pt.pos[0]);
  std::sort(xs.begin(), xs.end());
  std::set<QF> gaps;
  for (std::size_t i = 1; i < xs.size(); ++i) gaps.insert(xs[i] - xs[i - 1]);
  require(o, gaps.size() == 2, std::to_string(gaps.size()) + " gap lengths");
  if (gaps.size() == 2) require(o, *gaps.rbegin() == tau * *gaps.begin(), "gap ratio is not tau");
  if (o.pass) o.detail = "fiber 2; " + std::to_string(xs.size()) + " points, gaps " + gaps.begin()->str() + " and " + gaps.rbegin()->str();
  return o;
}

Outcome check_convergence() {
  Outcome o;
  Octagon oc;
  const auto& E = oc.E;
  const Scheme& s = oc.model.scheme;
  const Arrangement& arr = E.arrangement();
  const auto& cones = E.semigroup().cones;
  const std::vector<Rational> eps{Rational(1, 16), Rational(1, 8), Rational(1, 4), Rational(1, 2),
                                  Rational(1),     Rational(2),    Rational(4)};
  std::mt19937 rng(7);
  std::uniform_int_distribution<long> k(-2, 2);
  int targets = 0, candidates = 0, positives = 0, points = 0;
  for (std::size_t ti = 0; targets < 10; ti += 2) {
    const ConeType& t = cones[ti % cones.size()];
    const PlainCone& ct = E.cone(t);
    QFVector w = s.star_of(Coeffs{k(rng), k(rng), k(rng), k(rng)});
    if (!ct.closure.V.empty()) w = w + QF(Rational(k(rng), 3)) * ct.closure.V[0];
    InternalElement target{w, t};
    if (!E.is_member(target)) continue;
    ++targets;
    for (const auto& e : eps) require(o, E.in_basic_neighborhood(target, target, e), "not reflexive");
    for (const auto& t2 : cones) {
      const PlainCone& c2 = E.cone(t2);
      for (const Rational& f : {Rational(0), Rational(1, 8), Rational(1, 2), Rational(-1, 4)}) {
        InternalElement cand{w + QF(f) * ct.witness, t2};
        if (!E.is_member(cand)) continue;
        ++candidates;
        bool prev = false;
        for (const auto& e : eps) {
          bool v = E.in_basic_neighborhood(cand, target, e);
          require(o, !prev || v, "not monotone in eps");
          prev = v;
          if (!v) continue;
          ++positives;
          auto delta = E.neighborhood_delta(cand, target, e);
          require(o, delta.has_value(), "predicate without delta");
          if (!delta) continue;
          // Bounded net search: all lattice points of the candidate head
          // with coefficients in [-5, 5], plus one found by widening search.
          auto found = oracle::head_points(s, arr.normals(), t2, cand.w, *delta, 5);
          std::vector<long> far;
          for (const auto& v : E.search_head(cand.w, t2, *delta)) far.push_back(v.get_si());
          found.push_back(far);
          for (const auto& m : found) {
            QFVector x = s.star_of(m);
            require(o, in_head(arr, c2, t2, x, cand.w, *delta), "search returned a point outside the candidate head");
            require(o, in_head(arr, ct, t, x, target.w, e), "candidate head leaves the target head");
            ++points;
          }
        }
      }
    }
  }
  require(o, positives > 50, "too few positive cases");
  if (o.pass) {
    o.detail = "10 targets, " + std::to_string(candidates) + " candidates, " + std::to_string(positives) +
               " positive verdicts, " + std::to_string(points) + " net points checked";
  }
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    std::string name;
    double limit;
    std::function<Outcome()> run;
  };
  std::vector<Criterion> criteria{
      {1, "octagon hyperplanes", 1, check_hyperplanes},
      {2, "octagon stratification", 5, check_stratification},
      {3, "non-triviality", 10, check_nontriviality},
      {4, "Ellis structure summary", 10, check_ellis_summary},
      {5, "minimal ideal", 1, check_minimal_ideal},
      {6, "fiber over 0 and idempotent action", 5, check_fiber_action},
      {7, "semigroup laws", 30, check_semigroup_laws},
      {8, "action vs net limit", 300, check_action_vs_limit},
      {9, "density engine", 30, check_density},
      {10, "sandwich and equivariance", 60, check_sandwich_equivariance},
      {11, "fibonacci fiber and gaps", 5, check_fibonacci},
      {12, "convergence predicate", 60, check_convergence},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > c.limit) {
      o.pass = false;
      o.detail += " (time limit exceeded)";
    }
    failed += !o.pass;
    std::printf("criterion %2d %s  %-36s %7.2fs / %gs  %s\n", c.id, o.pass ? "PASS" : "FAIL", c.name.c_str(), secs,
                c.limit, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
