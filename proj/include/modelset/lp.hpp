#pragma once

// Exact feasibility of linear systems over Q(sqrt D).

#include <optional>
#include <vector>

#include "modelset/qfield.hpp"

namespace modelset {

struct LinearSystem {
  std::size_t vars = 0;
  std::vector<QFVector> eq;     // eq[i] . x == eq_rhs[i]
  QFVector eq_rhs;
  std::vector<QFVector> ge;     // ge[i] . x >= ge_rhs[i]
  QFVector ge_rhs;

  void add_eq(QFVector a, QF b) {
    eq.push_back(std::move(a));
    eq_rhs.push_back(std::move(b));
  }
  void add_ge(QFVector a, QF b) {
    ge.push_back(std::move(a));
    ge_rhs.push_back(std::move(b));
  }
};

/// A point satisfying the system (variables are free), or nullopt. Phase-I
/// simplex with Bland's rule, so it always terminates.
std::optional<QFVector> find_feasible(const LinearSystem& sys);

}  // namespace modelset
