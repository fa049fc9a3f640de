#include "qfb/analytics.hpp"

#include <cmath>
#include <numbers>

#include "qfb/errors.hpp"
#include "qfb/quadrature.hpp"

namespace qfb {
namespace {

constexpr double kTruncation = 1e-18;  // integrand cut-off relative to its peak

double sech(double x) {
  const double e = std::exp(-std::abs(x));
  return 2 * e / (1 + e * e);
}

void check_gamma(double gamma) {
  if (!(gamma > 0)) throw ConfigError("gamma must be positive");
}

}  // namespace

std::vector<double> linspace_times(double t_max, std::size_t points) {
  if (points < 2) throw ConfigError("need at least two time points");
  if (!(t_max > 0)) throw ConfigError("t_max must be positive");
  std::vector<double> t(points);
  for (std::size_t k = 0; k < points; ++k)
    t[k] = t_max * static_cast<double>(k) / static_cast<double>(points - 1);
  return t;
}

EntropyCurve feedback_entropy_curve(double p0, double gamma, const std::vector<double>& times) {
  check_gamma(gamma);
  if (!(p0 >= 0 && p0 <= 0.5)) throw ConfigError("P0 must lie in [0, 1/2]");
  EntropyCurve c;
  c.provenance = Provenance::analytic;
  c.times = times;
  c.values.reserve(times.size());
  for (double t : times) c.values.push_back(std::exp(-8 * gamma * t) * p0);
  return c;
}

EntropyCurve discrete_feedback_curve(double p0, double gamma, double dt, std::size_t n_steps) {
  check_gamma(gamma);
  if (!(p0 >= 0 && p0 <= 0.5)) throw ConfigError("P0 must lie in [0, 1/2]");
  if (!(dt > 0) || 8 * gamma * dt >= 1) throw ConfigError("need 0 < 8 gamma dt < 1");
  const double shrink = 1 - 8 * gamma * dt;
  EntropyCurve c;
  c.provenance = Provenance::discrete_exact;
  double p = p0;
  for (std::size_t n = 0; n <= n_steps; ++n) {
    c.times.push_back(static_cast<double>(n) * dt);
    c.values.push_back(p);
    p *= shrink;
  }
  return c;
}

double classical_entropy(double gamma, double t, double rel_tol) {
  check_gamma(gamma);
  if (!(rel_tol >= 1e-14 && rel_tol <= 1e-6)) throw ConfigError("rel_tol must lie in [1e-14, 1e-6]");
  if (!(t >= 0)) throw ConfigError("time must be >= 0");
  if (t == 0) return 0.5;
  const double gt = gamma * t;
  const double scale = std::sqrt(8 * gt);
  const double norm = 1 / std::sqrt(2 * std::numbers::pi);
  auto integrand = [&](double u) { return norm * std::exp(-0.5 * u * u) * sech(scale * u); };

  // Even integrand: integrate [0, cut] and double.
  const double peak = integrand(0);
  double cut = 0.25;
  while (integrand(cut) > kTruncation * peak) cut += 0.25;

  const auto q = integrate_adaptive(integrand, 0, cut, rel_tol);
  return std::exp(-4 * gt) * q.value;  // (e^{-4 gamma t}/2) * 2 * half-line integral
}

EntropyCurve classical_entropy_curve(double gamma, const std::vector<double>& times,
                                     double rel_tol) {
  EntropyCurve c;
  c.provenance = Provenance::quadrature;
  c.times = times;
  c.values.reserve(times.size());
  for (double t : times) c.values.push_back(classical_entropy(gamma, t, rel_tol));
  return c;
}

Speedup speedup_factor(double final_entropy, double gamma, double rel_tol) {
  check_gamma(gamma);
  if (!(final_entropy > 0)) throw ConfigError("final entropy must be positive");
  if (!(final_entropy < 0.5)) throw ConfigError("target unreachable: final entropy must be < 1/2");

  Speedup out;
  out.final_entropy = final_entropy;
  out.final_purity = 1 - 2 * final_entropy;
  out.time_feedback = std::log(0.5 / final_entropy) / (8 * gamma);

  double lo = 0;
  double hi = 2 * out.time_feedback;
  while (classical_entropy(gamma, hi, rel_tol) > final_entropy) {
    lo = hi;
    hi *= 2;
    if (hi > 1e6 / gamma) throw ConvergenceError("no-feedback curve never reaches the target");
  }
  // P_c is strictly decreasing; plain bisection to a relative width of 1e-14.
  while (hi - lo > 1e-14 * hi) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (classical_entropy(gamma, mid, rel_tol) > final_entropy)
      lo = mid;
    else
      hi = mid;
  }
  out.time_classical = 0.5 * (lo + hi);
  out.ratio = out.time_classical / out.time_feedback;
  return out;
}

}  // namespace qfb
