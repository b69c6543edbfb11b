#include "modelset/arrangement.hpp"

#include <algorithm>
#include <functional>

#include "modelset/lp.hpp"

namespace modelset {

std::string cone_str(const ConeType& t) {
  std::string out;
  for (int s : t) {
    switch (s) {
      case -1: out += '-'; break;
      case 0: out += '0'; break;
      case 1: out += '+'; break;
      default: out += "∞"; break;
    }
  }
  return out;
}

ConeType parse_cone(std::string_view text) {
  static constexpr std::string_view kInf = "∞";
  ConeType t;
  for (std::size_t i = 0; i < text.size();) {
    char ch = text[i];
    if (ch == '-') t.push_back(-1);
    else if (ch == '0') t.push_back(0);
    else if (ch == '+') t.push_back(1);
    else if (ch == 'i' || ch == 'x') t.push_back(kUndefined);
    else if (text.substr(i, kInf.size()) == kInf) {
      t.push_back(kUndefined);
      i += kInf.size();
      continue;
    } else {
      throw ParseError("bad cone type '" + std::string(text) + "'");
    }
    ++i;
  }
  return t;
}

ConeType product(const ConeType& t, const ConeType& u) {
  if (t.size() != u.size()) throw ValidationError("cone types of different length");
  ConeType out(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) out[i] = t[i] == 0 ? u[i] : t[i];
  return out;
}

bool leq(const ConeType& t, const ConeType& u) { return t == product(u, t); }

bool is_chamber(const ConeType& t) {
  return std::none_of(t.begin(), t.end(), [](int s) { return s == 0; });
}

bool is_origin(const ConeType& t) {
  return std::all_of(t.begin(), t.end(), [](int s) { return s == 0; });
}

Arrangement::Arrangement(std::vector<QFVector> normals, std::size_t n) : normals_(std::move(normals)), n_(n) {
  for (const auto& a : normals_) {
    if (a.size() != n_) throw ValidationError("hyperplane normal has wrong dimension");
  }
}

std::optional<QFVector> Arrangement::witness(const ConeType& t) const {
  if (t.size() != normals_.size()) throw ValidationError("cone type length differs from hyperplane count");
  LinearSystem sys;
  sys.vars = n_;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] == 0) sys.add_eq(normals_[i], 0);
    else if (t[i] == 1 || t[i] == -1) sys.add_ge(QF(t[i]) * normals_[i], 1);
  }
  return find_feasible(sys);
}

std::size_t Arrangement::cone_dimension(const ConeType& t) const {
  std::vector<QFVector> rows;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] == 0) rows.push_back(normals_[i]);
  }
  if (rows.empty()) return n_;
  return n_ - rank(QFMatrix::from_rows(rows, n_));
}

ConeType Arrangement::signs_of(const QFVector& x) const {
  ConeType t;
  for (const auto& a : normals_) t.push_back(dot(a, x).sign());
  return t;
}

std::size_t FaceSemigroup::index_of(const ConeType& t) const {
  auto it = std::lower_bound(cones.begin(), cones.end(), t);
  if (it == cones.end() || *it != t) throw ValidationError("cone type " + cone_str(t) + " is not a cone of the arrangement");
  return static_cast<std::size_t>(it - cones.begin());
}

std::size_t FaceSemigroup::identity() const { return index_of(ConeType(cones.front().size(), 0)); }

FaceSemigroup enumerate_cones(const Arrangement& arr) {
  FaceSemigroup S;
  const std::size_t k = arr.size();
  // Prefix extension with pruning on the sub-arrangement of the first hyperplanes.
  std::vector<QFVector> prefix_normals;
  ConeType t;
  std::function<void(std::size_t)> extend = [&](std::size_t i) {
    if (i == k) {
      auto w = arr.witness(t);
      if (!w) return;
      S.cones.push_back(t);
      S.witnesses.push_back(*w);
      S.dims.push_back(arr.cone_dimension(t));
      return;
    }
    Arrangement sub(std::vector<QFVector>(arr.normals().begin(), arr.normals().begin() + static_cast<std::ptrdiff_t>(i + 1)), arr.n());
    for (int s : {-1, 0, 1}) {
      t.push_back(s);
      if (sub.feasible(t)) extend(i + 1);
      t.pop_back();
    }
  };
  extend(0);
  S.table.assign(S.size(), std::vector<std::size_t>(S.size()));
  for (std::size_t i = 0; i < S.size(); ++i) {
    for (std::size_t j = 0; j < S.size(); ++j) {
      ConeType p = product(S.cones[i], S.cones[j]);
      auto it = std::lower_bound(S.cones.begin(), S.cones.end(), p);
      if (it == S.cones.end() || *it != p) {
        throw InvariantViolation("product " + cone_str(S.cones[i]) + "." + cone_str(S.cones[j]) + " is not a cone");
      }
      S.table[i][j] = static_cast<std::size_t>(it - S.cones.begin());
    }
  }
  return S;
}

ConeType checked_product(const Arrangement& arr, const ConeType& t, const ConeType& u) {
  ConeType p = product(t, u);
  if (!arr.feasible(p)) throw InvariantViolation("product " + cone_str(t) + "." + cone_str(u) + " is not a cone");
  return p;
}

bool is_right_ideal(const FaceSemigroup& S, const std::vector<std::size_t>& ideal,
                    const std::vector<std::size_t>& within) {
  for (std::size_t i : ideal) {
    for (std::size_t j : within) {
      if (std::find(ideal.begin(), ideal.end(), S.table[i][j]) == ideal.end()) return false;
    }
  }
  return true;
}

std::vector<std::size_t> minimal_ideal(const FaceSemigroup& S, const std::vector<std::size_t>& within) {
  std::vector<std::size_t> out;
  for (std::size_t i : within) {
    if (is_chamber(S.cones[i])) out.push_back(i);
  }
  return out;
}

ConeType geometric_product_oracle(const Arrangement& arr, const ConeType& t, const ConeType& u) {
  QFVector x = is_origin(t) ? zeros(arr.n()) : *arr.witness(t);
  QFVector y = is_origin(u) ? zeros(arr.n()) : *arr.witness(u);
  QF scale;
  for (const auto& a : arr.normals()) scale = std::max(scale, dot(a, y).abs());
  if (!scale.is_zero()) y = (QF(1) / scale) * y;
  QF delta = QF::rational(1, 2);
  ConeType prev = arr.signs_of(x + delta * y);
  for (int iter = 0; iter < 64; ++iter) {
    delta /= 2;
    ConeType cur = arr.signs_of(x + delta * y);
    if (cur == prev) return cur;
    prev = std::move(cur);
  }
  throw InvariantViolation("geometric product did not stabilize");
}

}  // namespace modelset
