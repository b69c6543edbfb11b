#include "modelset/subgroup.hpp"

#include "modelset/enumerate.hpp"
#include "modelset/lp.hpp"

namespace modelset {

namespace {

QFVector from_coordinates(const std::vector<QFVector>& basis, const QFVector& c, std::size_t n) {
  QFVector out(n);
  for (std::size_t j = 0; j < basis.size(); ++j) {
    if (!c[j].is_zero()) out = out + c[j] * basis[j];
  }
  return out;
}

std::vector<QFVector> standard_basis(std::size_t n) { return QFMatrix::identity(n).columns(); }

}  // namespace

FGSubgroup::FGSubgroup(std::vector<QFVector> ambient, std::vector<QFVector> generators, std::size_t n)
    : ambient_(std::move(ambient)), gens_(std::move(generators)), n_(n) {
  if (ambient_.empty()) {
    for (const auto& g : gens_) {
      if (!is_zero(g)) throw ValidationError("subgroup generator outside its ambient subspace");
      coords_.emplace_back();
    }
    return;
  }
  QFMatrix A = QFMatrix::from_columns(ambient_, n_);
  if (rank(A) != ambient_.size()) throw ValidationError("ambient basis is not independent");
  for (const auto& g : gens_) {
    auto c = try_solve(A, g);
    if (!c) throw ValidationError("subgroup generator outside its ambient subspace");
    coords_.push_back(std::move(*c));
  }
}

Rational shortest_vector_bound(const std::vector<QFVector>& basis, std::size_t n) {
  if (basis.empty()) return Rational(1);
  QF best = norm2(basis.front());
  for (const auto& b : basis) best = std::min(best, norm2(b));
  // Every vector at most as long as the shortest basis vector lies in the
  // cube [-r, r]^n.
  Rational r = sqrt_above(best);
  std::vector<Rational> lo(n, -r), hi(n, r);
  QFMatrix B = QFMatrix::from_columns(basis, n);
  double bound = best.to_double() * (1 + 1e-7) + 1e-12;
  enumerate_box(B, zeros(n), lo, hi, [&](const Coeffs& m, const std::vector<double>& x) {
    double approx = 0;
    for (double v : x) approx += v * v;
    if (approx > bound) return;
    bool nonzero = false;
    for (long v : m) nonzero = nonzero || v != 0;
    if (!nonzero) return;
    QFVector exact(n);
    for (std::size_t j = 0; j < m.size(); ++j) {
      if (m[j] != 0) exact = exact + QF(Rational(m[j])) * basis[j];
    }
    best = std::min(best, norm2(exact));
  });
  return sqrt_below(best);
}

ClosureDecomposition closure_decompose(const FGSubgroup& G) {
  ClosureDecomposition out;
  const std::size_t n = G.n();
  const std::size_t p = G.ambient().size();
  const std::size_t k = G.generators().size();
  if (p == 0) {
    out.epsilon = 1;
    return out;
  }
  if (k == 0) {
    out.D = G.ambient();
    out.dual = standard_basis(p);
    out.epsilon = 1;
    return out;
  }
  // Y = {y : M y in Z^k}, M the k x p coordinate matrix of the generators.
  QFMatrix M = QFMatrix::from_rows(G.coordinates(), p);
  std::vector<QFVector> left_kernel = kernel_basis(M.transpose());
  // Integer points of the image of M: rational vectors killed by the left kernel.
  std::vector<std::vector<Integer>> lattice = integer_kernel_of_forms(left_kernel, k);
  std::vector<QFVector> spanning = kernel_basis(M);
  for (const auto& lam : lattice) {
    QFVector rhs(k);
    for (std::size_t i = 0; i < k; ++i) rhs[i] = QF(Rational(lam[i]));
    spanning.push_back(solve(M, rhs));
  }
  out.dual = column_basis(spanning, p);
  std::vector<QFVector> v_coords = orthogonal_complement(out.dual, p);
  for (const auto& c : v_coords) out.V.push_back(from_coordinates(G.ambient(), c, n));

  if (out.V.empty()) {
    out.D = G.ambient();
  } else {
    std::vector<QFVector> rows;
    for (const auto& v : out.V) {
      QFVector row(p);
      for (std::size_t j = 0; j < p; ++j) row[j] = dot(G.ambient()[j], v);
      rows.push_back(std::move(row));
    }
    for (const auto& c : kernel_basis(QFMatrix::from_rows(rows, p))) out.D.push_back(from_coordinates(G.ambient(), c, n));
  }

  if (!out.D.empty()) {
    std::vector<QFVector> both = out.V;
    both.insert(both.end(), out.D.begin(), out.D.end());
    QFMatrix VD = QFMatrix::from_columns(both, n);
    std::vector<QFVector> projections;
    for (const auto& g : G.generators()) {
      QFVector c = solve(VD, g);
      QFVector d(n);
      for (std::size_t j = 0; j < out.D.size(); ++j) {
        if (!c[out.V.size() + j].is_zero()) d = d + c[out.V.size() + j] * out.D[j];
      }
      projections.push_back(std::move(d));
    }
    out.latticeDV = ZModule(std::move(projections), n).basis();
  }
  out.epsilon = shortest_vector_bound(out.latticeDV, n);
  return out;
}

bool is_dense(const FGSubgroup& G) { return closure_decompose(G).is_dense_in(G.ambient().size()); }

ConeContext::ConeContext(const Scheme& s, const Window& window)
    : scheme(s), faces(reversed_faces(window)), arrangement(faces.hyperplanes, s.n()) {}

PlainCone analyze_cone(const ConeContext& ctx, const ConeType& t) {
  const std::size_t n = ctx.scheme.n();
  const auto& normals = ctx.arrangement.normals();
  if (t.size() != normals.size()) throw ValidationError("cone type length differs from hyperplane count");
  PlainCone out;
  out.t = t;
  out.witness = zeros(n);
  std::vector<QFVector> zero_rows;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] == 0) zero_rows.push_back(normals[i]);
  }
  out.span = zero_rows.empty() ? standard_basis(n) : kernel_basis(QFMatrix::from_rows(zero_rows, n));
  if (out.span.empty()) {
    // The origin cone: the identity of the semigroup, non-trivial by convention.
    out.closure.epsilon = 1;
    out.nontrivial = true;
    return out;
  }
  std::vector<QFVector> images;
  for (const auto& m : ctx.scheme.stabilizer(out.span)) images.push_back(ctx.scheme.star_of(m));
  out.closure = closure_decompose(FGSubgroup(out.span, std::move(images), n));
  const auto& V = out.closure.V;
  if (V.empty()) return out;
  LinearSystem sys;
  sys.vars = V.size();
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] == 0) continue;
    QFVector row(V.size());
    for (std::size_t j = 0; j < V.size(); ++j) row[j] = QF(t[i]) * dot(normals[i], V[j]);
    sys.add_ge(std::move(row), 1);
  }
  auto y = find_feasible(sys);
  if (!y) return out;
  out.nontrivial = true;
  out.witness = from_coordinates(V, *y, n);
  return out;
}

std::optional<std::vector<Integer>> allowed_witness(const ConeContext& ctx, const PlainCone& cone,
                                                    const QFVector& w) {
  return coset_meets_subspace(w, ctx.scheme.gamma_star(), cone.closure.V);
}

bool allowed(const ConeContext& ctx, const PlainCone& cone, const QFVector& w) {
  return allowed_witness(ctx, cone, w).has_value();
}

}  // namespace modelset
