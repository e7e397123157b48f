#pragma once

#include <functional>
#include <vector>

namespace eghz {

struct NelderMeadOptions {
  double initial_step = 0.1;
  /// Stop once every vertex lies within this distance of the best vertex.
  double diameter_tol = 1e-6;
  int max_evaluations = 20000;
};

struct NelderMeadResult {
  std::vector<double> x;
  double value = 0.0;
  int evaluations = 0;
  bool converged = false;
};

/// Minimizes f from x0 with the standard reflection / expansion /
/// contraction / shrink moves (coefficients 1, 2, 1/2, 1/2). The returned
/// value is never worse than f(x0).
NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                             std::vector<double> x0, const NelderMeadOptions& options = {});

}  // namespace eghz
