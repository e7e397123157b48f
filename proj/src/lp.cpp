#include "entropic_ghz/lp.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace eghz {

namespace {
constexpr double kPivotEps = 1e-12;
}

FeasibilityLp solve_feasibility(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, double tol) {
  const Eigen::Index m = a.rows();
  const Eigen::Index n = a.cols();
  if (b.size() != m) throw std::invalid_argument("right-hand side size does not match A");

  // Tableau [A' | I | b'] with rows flipped so b' >= 0; artificials start basic.
  Eigen::VectorXd sign = Eigen::VectorXd::Ones(m);
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, n + m + 1);
  for (Eigen::Index i = 0; i < m; ++i) {
    if (b(i) < 0.0) sign(i) = -1.0;
    t.block(i, 0, 1, n) = sign(i) * a.row(i);
    t(i, n + i) = 1.0;
    t(i, n + m) = sign(i) * b(i);
  }
  // Reduced costs of the phase-one objective (sum of artificials), with the
  // negated objective value in the last entry.
  Eigen::RowVectorXd cost = Eigen::RowVectorXd::Zero(n + m + 1);
  for (Eigen::Index i = 0; i < m; ++i) {
    cost.head(n) -= t.block(i, 0, 1, n);
    cost(n + m) -= t(i, n + m);
  }
  std::vector<Eigen::Index> basis(static_cast<std::size_t>(m));
  for (Eigen::Index i = 0; i < m; ++i) basis[static_cast<std::size_t>(i)] = n + i;

  FeasibilityLp out;
  while (true) {
    Eigen::Index enter = -1;
    for (Eigen::Index j = 0; j < n + m; ++j) {
      if (cost(j) < -kPivotEps) {
        enter = j;
        break;
      }
    }
    if (enter < 0) break;

    Eigen::Index leave = -1;
    double best_ratio = 0.0;
    for (Eigen::Index i = 0; i < m; ++i) {
      if (t(i, enter) <= kPivotEps) continue;
      const double ratio = t(i, n + m) / t(i, enter);
      if (leave < 0 || ratio < best_ratio - kPivotEps ||
          (ratio <= best_ratio + kPivotEps &&
           basis[static_cast<std::size_t>(i)] < basis[static_cast<std::size_t>(leave)])) {
        leave = i;
        best_ratio = ratio;
      }
    }
    // Phase one is bounded below by zero, so an unbounded column cannot occur.
    if (leave < 0) throw std::logic_error("phase-one simplex reported an unbounded direction");

    t.row(leave) /= t(leave, enter);
    for (Eigen::Index i = 0; i < m; ++i) {
      if (i != leave && t(i, enter) != 0.0) t.row(i) -= t(i, enter) * t.row(leave);
    }
    cost -= cost(enter) * t.row(leave);
    basis[static_cast<std::size_t>(leave)] = enter;
    ++out.pivots;
  }

  out.infeasibility = -cost(n + m);
  out.feasible = out.infeasibility <= tol;
  out.x = Eigen::VectorXd::Zero(n);
  for (Eigen::Index i = 0; i < m; ++i) {
    const auto j = basis[static_cast<std::size_t>(i)];
    if (j < n) out.x(j) = std::max(0.0, t(i, n + m));
  }
  if (!out.feasible) {
    // Artificial column k has cost 1, so its reduced cost is 1 - y_k.
    out.farkas = Eigen::VectorXd(m);
    for (Eigen::Index k = 0; k < m; ++k) out.farkas(k) = sign(k) * (1.0 - cost(n + k));
  }
  return out;
}

}  // namespace eghz
