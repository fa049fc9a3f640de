#pragma once

#include <cstddef>
#include <functional>

namespace qfb {

struct QuadratureResult {
  double value = 0;
  double error = 0;
  std::size_t intervals = 0;
};

/// Globally adaptive 7/15-point Gauss-Kronrod integration on [lo, hi]. The
/// interval with the largest error estimate is bisected until the summed
/// estimate is below rel_tol * |value| (or abs_tol). Throws ConvergenceError
/// when max_intervals is reached first.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double lo, double hi,
                                    double rel_tol, double abs_tol = 0,
                                    std::size_t max_intervals = 4000);

}  // namespace qfb
