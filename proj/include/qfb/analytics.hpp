#pragma once

#include <cstddef>
#include <vector>

#include "qfb/curve.hpp"

namespace qfb {

inline constexpr double kDefaultRelTol = 1e-10;

/// P(t) = exp(-8 gamma t) P0 under optimal feedback.
EntropyCurve feedback_entropy_curve(double p0, double gamma, const std::vector<double>& times);

/// Exact discrete recursion P_n = (1 - b^2)^n P0 with b^2 = 8 gamma dt,
/// sampled at step boundaries n = 0..n_steps.
EntropyCurve discrete_feedback_curve(double p0, double gamma, double dt, std::size_t n_steps);

/// Mean linear entropy without feedback from the completely mixed state,
///   P_c(t) = exp(-4 gamma t)/sqrt(8 pi t) Int exp(-x^2/(2t)) / cosh(sqrt(8 gamma) x) dx,
/// evaluated as (exp(-4 gamma t)/2) E[sech(sqrt(8 gamma t) u)], u ~ N(0, 1).
/// P_c(0) = 1/2. Throws ConvergenceError if rel_tol cannot be met.
double classical_entropy(double gamma, double t, double rel_tol = kDefaultRelTol);

EntropyCurve classical_entropy_curve(double gamma, const std::vector<double>& times,
                                     double rel_tol = kDefaultRelTol);

struct Speedup {
  double final_entropy = 0;
  double final_purity = 0;  // 1 - 2P
  double time_feedback = 0;
  double time_classical = 0;
  double ratio = 0;
};

/// Ratio of the times the no-feedback and optimal-feedback mean entropies
/// need to fall from 1/2 to final_entropy.
Speedup speedup_factor(double final_entropy, double gamma, double rel_tol = kDefaultRelTol);

/// Evenly spaced grid t_k = k * t_max / (points - 1).
std::vector<double> linspace_times(double t_max, std::size_t points);

}  // namespace qfb
