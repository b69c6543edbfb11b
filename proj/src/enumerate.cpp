#include "modelset/enumerate.hpp"

#include <Eigen/Dense>

#include <cmath>

namespace modelset {

// The box is enclosed in the ellipsoid sum_j ((x_j - c_j) / h_j)^2 <= N, whose
// lattice points are listed by Fincke-Pohst on the Cholesky factor of the Gram
// matrix (via QR). Bounds are widened slightly to absorb rounding.
void enumerate_box(const QFMatrix& B, const QFVector& offset, const std::vector<Rational>& lo,
                   const std::vector<Rational>& hi,
                   const std::function<void(const Coeffs& m, const std::vector<double>& x)>& visit) {
  const std::size_t N = B.rows();
  const std::size_t k = B.cols();
  if (offset.size() != N || lo.size() != N || hi.size() != N) {
    throw ValidationError("enumeration box dimension mismatch");
  }

  Eigen::MatrixXd Bd(N, k);
  Eigen::VectorXd od(N);
  Eigen::VectorXd center(N);
  Eigen::VectorXd half(N);
  for (std::size_t j = 0; j < N; ++j) {
    for (std::size_t i = 0; i < k; ++i) Bd(j, i) = B(j, i).to_double();
    od(j) = offset[j].to_double();
    if (!(hi[j] > lo[j])) throw ValidationError("enumeration box must have positive width");
    center(j) = Rational((lo[j] + hi[j]) / 2).get_d();
    half(j) = Rational((hi[j] - lo[j]) / 2).get_d();
  }

  std::vector<double> x(N);
  auto emit = [&](const Coeffs& m) {
    for (std::size_t j = 0; j < N; ++j) {
      double v = od(j);
      for (std::size_t i = 0; i < k; ++i) v += Bd(j, i) * static_cast<double>(m[i]);
      x[j] = v;
    }
    visit(m, x);
  };

  if (k == 0) {
    emit({});
    return;
  }

  Eigen::MatrixXd A = half.cwiseInverse().asDiagonal() * Bd;
  Eigen::VectorXd b = half.cwiseInverse().asDiagonal() * (od - center);
  // QR instead of a Cholesky of A^T A: the scaled rows can differ by many
  // orders of magnitude and the Gram matrix would square that.
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(A);
  Eigen::MatrixXd R = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
  for (std::size_t i = 0; i < k; ++i) {
    if (R(i, i) < 0) R.row(i) *= -1.0;
    if (!(R(i, i) > 1e-300)) throw ValidationError("enumeration basis is degenerate");
  }
  Eigen::VectorXd m0 = qr.solve(-b);
  double base = (A * m0 + b).squaredNorm();
  double budget = (static_cast<double>(N) - base) * (1.0 + 1e-9) + 1e-9;
  if (budget < 0) return;

  Coeffs m(k);
  std::vector<double> remaining(k + 1);
  remaining[k] = budget;
  // Recursive descent from the last coordinate.
  std::function<void(std::size_t)> descend = [&](std::size_t level) {
    const std::size_t i = level - 1;
    double shift = 0;
    for (std::size_t j = i + 1; j < k; ++j) shift += R(i, j) * (static_cast<double>(m[j]) - m0(j));
    double c = m0(i) - shift / R(i, i);
    double r = std::sqrt(std::max(remaining[level], 0.0)) / R(i, i);
    double slack = 1e-9 * (1.0 + std::abs(c) + r);
    long lo_i = static_cast<long>(std::ceil(c - r - slack));
    long hi_i = static_cast<long>(std::floor(c + r + slack));
    for (long v = lo_i; v <= hi_i; ++v) {
      m[i] = v;
      double t = R(i, i) * (static_cast<double>(v) - m0(i)) + shift;
      remaining[i] = remaining[level] - t * t;
      if (remaining[i] < -1e-9 * (1.0 + budget)) continue;
      if (i == 0) emit(m);
      else descend(i);
    }
  };
  descend(k);
}

}  // namespace modelset
