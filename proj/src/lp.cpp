#include "modelset/lp.hpp"

namespace modelset {

std::optional<QFVector> find_feasible(const LinearSystem& sys) {
  const std::size_t n = sys.vars;
  const std::size_t m_eq = sys.eq.size();
  const std::size_t m = m_eq + sys.ge.size();
  if (m == 0) return zeros(n);

  // Columns: x+ (n), x- (n), surplus (one per >= row), artificial (one per row).
  const std::size_t n_surplus = sys.ge.size();
  const std::size_t art0 = 2 * n + n_surplus;
  const std::size_t cols = art0 + m;

  // Tableau rows 0..m-1 are constraints, row m is the phase-I objective;
  // the last column holds the right-hand side.
  QFMatrix tab(m + 1, cols + 1);
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) {
    const bool is_eq = i < m_eq;
    const QFVector& a = is_eq ? sys.eq[i] : sys.ge[i - m_eq];
    QF rhs = is_eq ? sys.eq_rhs[i] : sys.ge_rhs[i - m_eq];
    if (a.size() != n) throw ValidationError("constraint dimension mismatch");
    QF flip = rhs.sign() < 0 ? QF(-1) : QF(1);
    for (std::size_t j = 0; j < n; ++j) {
      tab(i, j) = flip * a[j];
      tab(i, n + j) = -(flip * a[j]);
    }
    if (!is_eq) tab(i, 2 * n + (i - m_eq)) = -flip;
    tab(i, art0 + i) = 1;
    tab(i, cols) = flip * rhs;
    basis[i] = art0 + i;
  }
  // Objective: minimize the sum of artificials, written as reduced costs.
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j <= cols; ++j) {
      if (j >= art0 && j < cols) continue;
      if (!tab(i, j).is_zero()) tab(m, j) -= tab(i, j);
    }
  }

  while (true) {
    std::size_t enter = cols;
    for (std::size_t j = 0; j < cols; ++j) {
      if (tab(m, j).sign() < 0) {
        enter = j;
        break;
      }
    }
    if (enter == cols) break;
    std::size_t leave = m;
    QF best;
    for (std::size_t i = 0; i < m; ++i) {
      if (tab(i, enter).sign() <= 0) continue;
      QF ratio = tab(i, cols) / tab(i, enter);
      if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave == m) break;  // unbounded direction; cannot happen for phase I
    QF piv = tab(leave, enter);
    for (std::size_t j = 0; j <= cols; ++j) {
      if (!tab(leave, j).is_zero()) tab(leave, j) /= piv;
    }
    for (std::size_t i = 0; i <= m; ++i) {
      if (i == leave || tab(i, enter).is_zero()) continue;
      QF f = tab(i, enter);
      for (std::size_t j = 0; j <= cols; ++j) {
        if (!tab(leave, j).is_zero()) tab(i, j) -= f * tab(leave, j);
      }
    }
    basis[leave] = enter;
  }

  if (!tab(m, cols).is_zero()) return std::nullopt;
  QFVector x(n);
  for (std::size_t i = 0; i < m; ++i) {
    if (basis[i] < n) x[basis[i]] += tab(i, cols);
    else if (basis[i] < 2 * n) x[basis[i] - n] -= tab(i, cols);
  }
  return x;
}

}  // namespace modelset
