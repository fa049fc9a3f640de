#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>
#include <vector>

#include "qfb/bloch.hpp"
#include "qfb/errors.hpp"

namespace qfb {

enum class StrategyKind { optimal, none, fixed_theta, custom_schedule };

/// Feedback rule applied after every measurement step. Plain data so runs can
/// be serialized into a manifest and replayed.
struct Strategy {
  StrategyKind kind = StrategyKind::optimal;
  double theta = std::numbers::pi / 2;  // fixed_theta target polar angle
  std::vector<double> schedule;         // custom_schedule angles, one per step

  static Strategy optimal() { return {}; }
  static Strategy none() { return {StrategyKind::none, 0, {}}; }
  static Strategy fixed_theta(double theta) {
    if (!(theta >= 0 && theta <= std::numbers::pi))
      throw ConfigError("fixed-theta target must lie in [0, pi]");
    return {StrategyKind::fixed_theta, theta, {}};
  }
  static Strategy custom_schedule(std::vector<double> angles) {
    for (double a : angles)
      if (!std::isfinite(a)) throw ConfigError("custom schedule angles must be finite");
    return {StrategyKind::custom_schedule, 0, std::move(angles)};
  }

  bool operator==(const Strategy&) const = default;
};

// Text form used by the CLI: optimal | none | fixed-theta=X.
std::string to_string(const Strategy& s);
Strategy parse_strategy(const std::string& text);

template <typename Scalar = double>
struct FeedbackCommand {
  Rotation<Scalar> rotation;
  Scalar alpha = 0;
  // Azimuth of the Bloch vector's xy-projection that fixed the axis.
  Scalar axis_azimuth = 0;
};

namespace detail {

// Azimuth with the degenerate convention phi = 0 on the z-axis.
template <typename Scalar>
Scalar azimuth_or_zero(const BlochState<Scalar>& s) {
  if (s.x() == 0 && s.y() == 0) return 0;
  return azimuth(s);
}

// Rotating about (-sin phi, cos phi, 0) by +alpha adds alpha to the polar
// angle while keeping the azimuth.
template <typename Scalar>
FeedbackCommand<Scalar> tilt_command(Scalar phi, Scalar delta_theta) {
  Vec3<Scalar> axis(-std::sin(phi), std::cos(phi), 0);
  if (delta_theta < 0) axis = -axis;
  const Scalar alpha = std::abs(delta_theta);
  return {Rotation<Scalar>{axis, alpha}, alpha, phi};
}

}  // namespace detail

/// Minimal-angle rotation putting the Bloch vector back in the xy-plane. The
/// axis lies in the xy-plane orthogonal to the vector's projection, so the
/// azimuth is kept; on the z-axis the axis is (0, 1, 0) and the state lands
/// on +x.
template <typename Scalar>
FeedbackCommand<Scalar> optimal_correction(const BlochState<Scalar>& s) {
  const Scalar phi = detail::azimuth_or_zero(s);
  if (s.z() == 0) return {Rotation<Scalar>{Vec3<Scalar>(-std::sin(phi), std::cos(phi), 0), 0}, 0, phi};
  const Scalar r_xy = std::hypot(s.x(), s.y());
  // alpha = atan(|az| / r_xy), signed so that the polar angle moves to pi/2.
  const Scalar alpha = std::atan2(std::abs(s.z()), r_xy);
  return detail::tilt_command(phi, s.z() > 0 ? alpha : -alpha);
}

/// Correction angle after step n (n >= 1) of the exact optimal recursion,
/// using the pre-measurement entropy P_{n-1} = (1 - b^2)^(n-1) P0.
template <typename Scalar>
Scalar alpha_schedule(std::size_t n, Scalar b_step, Scalar p0) {
  if (n < 1) throw ConfigError("alpha_schedule is defined for n >= 1");
  if (!(b_step > 0 && b_step < 1)) throw ConfigError("b_step must lie in (0, 1)");
  if (!(p0 >= 0 && p0 <= Scalar(0.5))) throw ConfigError("P0 must lie in [0, 1/2]");
  const Scalar b2 = b_step * b_step;
  const Scalar p_prev = std::pow(1 - b2, Scalar(n - 1)) * p0;
  return std::atan2(b_step, std::sqrt(std::max(Scalar(0), 1 - 2 * p_prev)) * std::sqrt(1 - b2));
}

/// Linearized continuum feedback angle sqrt(8 gamma) dW / sqrt(1 - 2 P(t)),
/// with P(t) = P0 exp(-8 gamma t). Throws DivergentFeedback at P(t) = 1/2.
template <typename Scalar>
Scalar continuum_alpha(Scalar p0, Scalar gamma, Scalar t, Scalar dw) {
  const Scalar purity = 1 - 2 * p0 * std::exp(-8 * gamma * t);
  if (!(purity > 0))
    throw DivergentFeedback("feedback angle diverges for the completely mixed state");
  return std::sqrt(8 * gamma) * dw / std::sqrt(purity);
}

/// Rotation a strategy prescribes for the state reached after measurement
/// step `step` (0-based).
template <typename Scalar>
FeedbackCommand<Scalar> strategy_command(const Strategy& strategy, const BlochState<Scalar>& s,
                                         std::size_t step = 0) {
  switch (strategy.kind) {
    case StrategyKind::optimal:
      return optimal_correction(s);
    case StrategyKind::none:
      return {};
    case StrategyKind::fixed_theta: {
      if (s.squared_norm() == 0) return {};
      return detail::tilt_command(detail::azimuth_or_zero(s),
                                  Scalar(strategy.theta) - polar_angle(s));
    }
    case StrategyKind::custom_schedule: {
      if (step >= strategy.schedule.size()) return {};
      const Scalar phi = detail::azimuth_or_zero(s);
      // Positive entries tilt toward the xy-plane.
      const Scalar angle = Scalar(strategy.schedule[step]);
      return detail::tilt_command(phi, s.z() >= 0 ? angle : -angle);
    }
  }
  return {};
}

template <typename Scalar>
BlochState<Scalar> apply_strategy(const Strategy& strategy, const BlochState<Scalar>& s,
                                  std::size_t step = 0) {
  if (strategy.kind == StrategyKind::none) return s;
  const auto cmd = strategy_command(strategy, s, step);
  if (cmd.alpha == 0) return s;
  return rotate(s, cmd.rotation);
}

}  // namespace qfb
