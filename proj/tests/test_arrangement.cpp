#include <doctest.h>

#include <set>

#include "modelset/arrangement.hpp"
#include "modelset/config.hpp"

using namespace modelset;

namespace {

Arrangement octagon_arrangement() {
  Model m = load_preset("octagon");
  return Arrangement(reversed_faces(m.window).hyperplanes, 2);
}

Arrangement lines(std::size_t k) {
  std::vector<QFVector> pool{{QF(0), QF(1)}, {QF(1), QF(-1)}, {QF(1), QF(0)}, {QF(1), QF(1)}};
  return Arrangement(std::vector<QFVector>(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(k)), 2);
}

// Sign vectors met by integer points of [-B, B]^2.
std::set<ConeType> sampled_cones(const Arrangement& arr, long B) {
  std::set<ConeType> out;
  for (long x = -B; x <= B; ++x) {
    for (long y = -B; y <= B; ++y) out.insert(arr.signs_of({QF(x), QF(y)}));
  }
  return out;
}

// x lies in the closure of the cone of t.
bool in_closure(const Arrangement& arr, const ConeType& t, const QFVector& x) {
  for (std::size_t i = 0; i < arr.size(); ++i) {
    int s = dot(arr.normals()[i], x).sign();
    if (t[i] == 0 ? s != 0 : s == -t[i]) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("feasibility") {
  Arrangement two = lines(3);
  auto w = two.witness({0, 0, 0});
  REQUIRE(w);
  CHECK(is_zero(*w));
  Arrangement orth(std::vector<QFVector>{{QF(1), QF(0)}, {QF(0), QF(1)}}, 2);
  auto q = orth.witness({1, 1});
  REQUIRE(q);
  CHECK(orth.signs_of(*q) == ConeType{1, 1});
  // Two lines forced to 0 pin the origin, so a third sign cannot be +.
  Arrangement oct = octagon_arrangement();
  CHECK_FALSE(oct.feasible({0, 0, 1, 1}));
  CHECK_FALSE(oct.feasible({1, 0, 0, 1}));
  CHECK(oct.feasible({0, 0, 0, 0}));
  // Irrational normals.
  Arrangement irr(std::vector<QFVector>{{QF(1), QF::parse("√2", 2)}, {QF(1), QF::parse("-√2", 2)}}, 2);
  for (const auto& t : enumerate_cones(irr).cones) {
    auto x = irr.witness(t);
    REQUIRE(x);
    CHECK(irr.signs_of(*x) == t);
  }
}

TEST_CASE("cone enumeration counts") {
  Arrangement one(std::vector<QFVector>{{QF(1)}}, 1);
  CHECK(enumerate_cones(one).size() == 3);
  Arrangement orth(std::vector<QFVector>{{QF(1), QF(0)}, {QF(0), QF(1)}}, 2);
  CHECK(enumerate_cones(orth).size() == 9);

  FaceSemigroup S = enumerate_cones(octagon_arrangement());
  CHECK(S.size() == 17);
  int dims[3] = {0, 0, 0};
  for (std::size_t d : S.dims) ++dims[d];
  CHECK(dims[0] == 1);
  CHECK(dims[1] == 8);
  CHECK(dims[2] == 8);
  CHECK(std::is_sorted(S.cones.begin(), S.cones.end()));
  for (std::size_t i = 0; i < S.size(); ++i) {
    CHECK(octagon_arrangement().signs_of(S.witnesses[i]) == S.cones[i]);
    CHECK(S.dims[i] == octagon_arrangement().cone_dimension(S.cones[i]));
  }
}

TEST_CASE("k lines give 4k+1 cones") {
  for (std::size_t k = 1; k <= 4; ++k) {
    Arrangement arr = lines(k);
    FaceSemigroup S = enumerate_cones(arr);
    // One line: the line itself is a single cone.
    CHECK(S.size() == (k == 1 ? 3 : 4 * k + 1));
    auto brute = sampled_cones(arr, 3);
    CHECK(std::set<ConeType>(S.cones.begin(), S.cones.end()) == brute);
  }
}

TEST_CASE("product law") {
  FaceSemigroup S = enumerate_cones(octagon_arrangement());
  const ConeType o(4, 0);
  for (const auto& t : S.cones) {
    CHECK(product(o, t) == t);
    CHECK(product(t, o) == t);
    CHECK(product(t, t) == t);
    if (is_chamber(t)) {
      for (const auto& u : S.cones) CHECK(product(t, u) == t);
    }
  }
  CHECK(cone_str({1, 0, -1, kUndefined}) == "+0-∞");
  CHECK(parse_cone("+0-∞") == ConeType{1, 0, -1, kUndefined});
  CHECK_THROWS(parse_cone("+a"));
}

TEST_CASE("associativity and closure") {
  Arrangement arr = octagon_arrangement();
  FaceSemigroup S = enumerate_cones(arr);
  const std::size_t n = S.size();
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      CHECK(S.cones[S.table[a][b]] == product(S.cones[a], S.cones[b]));
      CHECK(arr.feasible(S.cones[S.table[a][b]]));
      for (std::size_t c = 0; c < n; ++c) CHECK(S.table[S.table[a][b]][c] == S.table[a][S.table[b][c]]);
    }
  }
}

TEST_CASE("order") {
  Arrangement arr = octagon_arrangement();
  FaceSemigroup S = enumerate_cones(arr);
  std::size_t o = S.identity();
  for (std::size_t i = 0; i < S.size(); ++i) {
    CHECK(leq(S.cones[i], S.cones[i]));
    CHECK(leq(S.cones[i], S.cones[o]));
    for (std::size_t j = 0; j < S.size(); ++j) {
      // t <= u exactly when the cone of u lies in the closure of the cone of t.
      CHECK(leq(S.cones[i], S.cones[j]) == in_closure(arr, S.cones[i], S.witnesses[j]));
      if (is_chamber(S.cones[i]) && is_chamber(S.cones[j]) && i != j) {
        CHECK_FALSE(leq(S.cones[i], S.cones[j]));
      }
      // Chambers are minimal.
      if (is_chamber(S.cones[j]) && leq(S.cones[i], S.cones[j])) CHECK(i == j);
    }
  }
}

TEST_CASE("ideals") {
  FaceSemigroup S = enumerate_cones(octagon_arrangement());
  std::vector<std::size_t> all(S.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  auto ideal = minimal_ideal(S, all);
  CHECK(ideal.size() == 8);
  CHECK(is_right_ideal(S, ideal, all));
  CHECK(is_right_ideal(S, all, all));
  std::vector<std::size_t> only_origin{S.identity()};
  CHECK_FALSE(is_right_ideal(S, only_origin, all));
}

TEST_CASE("geometric product oracle") {
  for (Arrangement arr : {octagon_arrangement(), lines(2), Arrangement(std::vector<QFVector>{{QF(1)}}, 1)}) {
    FaceSemigroup S = enumerate_cones(arr);
    for (const auto& t : S.cones) {
      for (const auto& u : S.cones) CHECK(geometric_product_oracle(arr, t, u) == product(t, u));
    }
  }
}
