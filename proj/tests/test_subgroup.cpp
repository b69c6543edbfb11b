#include <doctest.h>

#include <algorithm>
#include <random>

#include "modelset/config.hpp"
#include "modelset/subgroup.hpp"
#include "oracles.hpp"

using namespace modelset;

namespace {

QF q(const char* text) { return QF::parse(text, 2); }

// Generators in coordinates of an orthonormal-up-to-scale basis of `dir`.
std::vector<std::vector<double>> along(const std::vector<QFVector>& gens, const std::vector<QFVector>& dir) {
  std::vector<std::vector<double>> out;
  for (const auto& g : gens) {
    std::vector<double> c;
    for (const auto& d : dir) c.push_back(dot(g, d).to_double() / std::sqrt(norm2(d).to_double()));
    out.push_back(c);
  }
  return out;
}

bool same_subspace(const std::vector<QFVector>& a, const std::vector<QFVector>& b, std::size_t n) {
  return a.size() == b.size() && span_contains(a, b, n) && span_contains(b, a, n);
}

}  // namespace

TEST_CASE("closure of <1, √2> in R") {
  FGSubgroup G({{QF(1)}}, {{QF(1)}, {q("√2")}}, 1);
  auto c = closure_decompose(G);
  CHECK(c.V.size() == 1);
  CHECK(c.D.empty());
  CHECK(c.epsilon == 1);
  CHECK(is_dense(G));
  CHECK(oracle::numerically_dense({{1.0}, {std::sqrt(2.0)}}));
}

TEST_CASE("closure of Z in R") {
  FGSubgroup G({{QF(1)}}, {{QF(1)}}, 1);
  auto c = closure_decompose(G);
  CHECK(c.V.empty());
  CHECK(c.D.size() == 1);
  REQUIRE(c.latticeDV.size() == 1);
  CHECK(norm2(c.latticeDV[0]) == QF(1));
  CHECK(c.epsilon > 0);
  CHECK(c.epsilon < 1);
  CHECK_FALSE(is_dense(G));
  CHECK_FALSE(oracle::numerically_dense({{1.0}}));
}

TEST_CASE("closure of the diagonal example") {
  std::vector<QFVector> gens{{QF(1), QF(0)}, {QF(0), QF(1)}, {q("√2"), q("√2")}};
  std::vector<QFVector> plane{{QF(1), QF(0)}, {QF(0), QF(1)}};
  auto c = closure_decompose(FGSubgroup(plane, gens, 2));
  CHECK(same_subspace(c.V, {{QF(1), QF(1)}}, 2));
  CHECK(same_subspace(c.D, {{QF(1), QF(-1)}}, 2));
  REQUIRE(c.latticeDV.size() == 1);
  CHECK(norm2(c.latticeDV[0]) == QF(Rational(1, 2)));
  CHECK(QF(c.epsilon * c.epsilon) < QF(Rational(1, 2)));
  // Numerically: dense along (1,1), discrete along (1,-1).
  CHECK(oracle::numerically_dense(along(gens, {{QF(1), QF(1)}})));
  CHECK_FALSE(oracle::numerically_dense(along(gens, {{QF(1), QF(-1)}})));
}

TEST_CASE("closure does not depend on generator order") {
  std::vector<QFVector> gens{{QF(1), QF(0)}, {QF(0), QF(1)}, {q("√2"), q("√2")}, {q("1/2"), q("1/2")}};
  std::vector<QFVector> plane{{QF(1), QF(0)}, {QF(0), QF(1)}};
  auto base = closure_decompose(FGSubgroup(plane, gens, 2));
  std::sort(gens.begin(), gens.end());
  do {
    auto c = closure_decompose(FGSubgroup(plane, gens, 2));
    CHECK(same_subspace(c.V, base.V, 2));
    CHECK(ZModule(c.latticeDV, 2).basis() == ZModule(base.latticeDV, 2).basis());
  } while (std::next_permutation(gens.begin(), gens.end()));
}

TEST_CASE("density agrees with the numeric oracle on the octagon") {
  Model m = load_preset("octagon");
  std::vector<QFVector> plane{{QF(1), QF(0)}, {QF(0), QF(1)}};
  CHECK(is_dense(FGSubgroup(plane, m.scheme.star(), 2)));
  auto rep = validate_almost_canonical(m.scheme, m.window);
  for (const auto& h : rep.hyperplanes) {
    auto L = hyperplane_basis(h.normal);
    CHECK(h.dense == oracle::numerically_dense(along(h.stabilizer_star_basis, L)));
  }
  // Z^2 inside the discrete scheme.
  Scheme d = oracle::discrete_scheme();
  CHECK_FALSE(is_dense(FGSubgroup(plane, d.star(), 2)));
}

TEST_CASE("shortest vector bound") {
  CHECK(shortest_vector_bound({}, 2) == 1);
  CHECK(shortest_vector_bound({{QF(3)}}, 1) < 3);
  CHECK(shortest_vector_bound({{QF(3)}}, 1) > Rational(2999, 1000));
  // Rank 2 against brute force over |c| <= 20.
  std::vector<std::vector<QFVector>> lattices{
      {{QF(1), q("1/3√2")}, {q("1/2"), QF(2)}},
      {{QF(5), q("√2")}, {QF(4), q("3/2√2")}},
      {{q("√2"), QF(0)}, {QF(7), QF(1)}},
  };
  for (const auto& B : lattices) {
    std::vector<std::vector<double>> Bd;
    for (const auto& v : B) Bd.push_back(to_double(v));
    double brute = oracle::brute_shortest(Bd, 20);
    double bound = shortest_vector_bound(B, 2).get_d();
    CHECK(bound < brute);
    CHECK(bound > brute - 1e-4);
  }
}

TEST_CASE("non-trivial cones of the octagon") {
  Model m = load_preset("octagon");
  ConeContext ctx(m.scheme, m.window);
  FaceSemigroup S = enumerate_cones(ctx.arrangement);
  for (std::size_t i = 0; i < S.size(); ++i) {
    PlainCone c = analyze_cone(ctx, S.cones[i]);
    CHECK(c.nontrivial);
    CHECK(c.plain_dim() == S.dims[i]);
    CHECK(c.equals_cone());
    CHECK(c.closure.D.empty());
    CHECK(c.closure.epsilon == 1);
    if (is_origin(S.cones[i])) {
      CHECK(c.closure.V.empty());
      CHECK(is_zero(c.witness));
    } else {
      CHECK(ctx.arrangement.signs_of(c.witness) == S.cones[i]);
      // Γ* accumulates at 0 inside the cone.
      auto pts = oracle::head_points(m.scheme, ctx.arrangement.normals(), S.cones[i], zeros(2), Rational(1, 2), 8);
      CHECK_FALSE(pts.empty());
    }
  }
}

TEST_CASE("trivial cones of the synthetic schemes") {
  Scheme d = oracle::discrete_scheme();
  ConeContext ctx(d, oracle::unit_square());
  FaceSemigroup S = enumerate_cones(ctx.arrangement);
  CHECK(S.size() == 9);
  for (const auto& t : S.cones) {
    PlainCone c = analyze_cone(ctx, t);
    CHECK(c.nontrivial == is_origin(t));
    if (!is_origin(t)) {
      CHECK(oracle::head_points(d, ctx.arrangement.normals(), t, zeros(2), Rational(1, 2), 3).empty());
    }
  }

  Scheme g = oracle::diagonal_scheme();
  ConeContext gctx(g, oracle::unit_square());
  for (const auto& t : enumerate_cones(gctx.arrangement).cones) {
    PlainCone c = analyze_cone(gctx, t);
    // Only the two chambers meeting the diagonal survive.
    bool expect = is_origin(t) || t == ConeType{1, 1} || t == ConeType{-1, -1};
    CHECK(c.nontrivial == expect);
    auto pts = oracle::head_points(g, gctx.arrangement.normals(), t, zeros(2), Rational(1, 4), 4);
    if (!is_origin(t)) CHECK(pts.empty() != expect);
    if (expect && !is_origin(t)) {
      CHECK(c.plain_dim() == 1);
      CHECK(c.closure.D.size() == 1);
      CHECK(QF(c.closure.epsilon * c.closure.epsilon) < QF(Rational(1, 2)));
    }
  }
}

TEST_CASE("allowed translations") {
  Model m = load_preset("octagon");
  ConeContext ctx(m.scheme, m.window);
  FaceSemigroup S = enumerate_cones(ctx.arrangement);
  QFVector half{q("1/2"), QF(0)};
  for (const auto& t : S.cones) {
    PlainCone c = analyze_cone(ctx, t);
    CHECK(allowed(ctx, c, zeros(2)));
    bool has_x_axis = span_contains(c.closure.V, {{QF(1), QF(0)}}, 2);
    CHECK(allowed(ctx, c, half) == has_x_axis);
    auto wit = allowed_witness(ctx, c, half);
    if (wit) CHECK(span_contains(c.closure.V, {half - m.scheme.star_of(*wit)}, 2));
  }
}

TEST_CASE("discrete part near an allowed point") {
  Scheme g = oracle::diagonal_scheme();
  ConeContext ctx(g, oracle::unit_square());
  PlainCone c = analyze_cone(ctx, {1, 1});
  REQUIRE(c.nontrivial);
  std::mt19937 rng(41);
  std::uniform_int_distribution<long> k(-2, 2);
  for (int trial = 0; trial < 5; ++trial) {
    Coeffs m0{k(rng), k(rng), k(rng), k(rng)};
    QF s = oracle::random_qf(rng, 2, 3, 5);
    QFVector w = g.star_of(m0) + QFVector{s, s};
    REQUIRE(allowed(ctx, c, w));
    // Every Γ* point of the cone head of radius epsilon at w lies on w + V.
    auto pts = oracle::head_points(g, ctx.arrangement.normals(), c.t, w, c.closure.epsilon, 6);
    for (const auto& p : pts) {
      QFVector u = g.star_of(p) - w;
      CHECK(u[0] == u[1]);
    }
  }
}
