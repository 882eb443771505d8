#pragma once

#include <functional>
#include <span>
#include <vector>

namespace qcorr::numerics {

struct NelderMeadOptions {
  double initial_step = 0.2;
  double x_tol = 1e-8;
  double f_tol = 1e-12;
  int max_evaluations = 2000;
  /// Restart from the best vertex with a fresh simplex this many times.
  /// Counteracts the simplex collapsing on non-smooth objectives.
  int polish_restarts = 0;
};

struct NelderMeadResult {
  std::vector<double> x;
  double value = 0.0;
  int evaluations = 0;
};

/// Derivative-free simplex descent with dimension-adaptive coefficients.
/// The objective must accept any real vector; callers map constrained
/// parameters onto their feasible set inside the objective.
NelderMeadResult minimize_nelder_mead(const std::function<double(std::span<const double>)>& f,
                                      std::vector<double> x0, const NelderMeadOptions& options = {});

}  // namespace qcorr::numerics
