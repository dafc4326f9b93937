#pragma once

#include <functional>
#include <span>
#include <vector>

namespace hrl {

struct NelderMeadOptions {
  int max_evaluations = 1000;
  double initial_step = 0.1;  // simplex edge relative to max(|x0|, 1)
  double f_tolerance = 1e-12;  // stop when the simplex f-spread falls below this (relative)
  int restarts = 2;            // re-expand the simplex around the best point after convergence
};

struct NelderMeadResult {
  std::vector<double> x;
  double value = 0.0;
  int evaluations = 0;
  bool converged = false;
};

/// Minimizes f with the standard reflection/expansion/contraction/shrink
/// moves (coefficients 1, 2, 1/2, 1/2).  Non-finite values count as +inf.
NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)>& f,
                             std::vector<double> x0, const NelderMeadOptions& options = {});

}  // namespace hrl
