// Dense phase-one simplex for small feasibility problems
//   find x >= 0 with A x = b.
// Bland's rule keeps it finite; problem sizes here are tens of rows.

#pragma once

#include <Eigen/Dense>

namespace eghz {

struct FeasibilityLp {
  bool feasible = false;
  /// A point with A x ≈ b when feasible.
  Eigen::VectorXd x;
  /// Sum of artificial variables at the phase-one optimum (0 when feasible).
  double infeasibility = 0.0;
  /// Farkas certificate when infeasible: y^T A <= 0 componentwise and
  /// y^T b > 0, so no x >= 0 can satisfy A x = b.
  Eigen::VectorXd farkas;
  int pivots = 0;
};

/// `tol` is the phase-one objective below which the system counts as feasible.
FeasibilityLp solve_feasibility(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                                double tol = 1e-9);

}  // namespace eghz
