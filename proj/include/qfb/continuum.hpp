#pragma once

#include <cstdint>

#include "qfb/bloch.hpp"
#include "qfb/curve.hpp"
#include "qfb/feedback.hpp"
#include "qfb/random.hpp"

namespace qfb {

/// How a continuum step of length dt is realized.
///  - euler_maruyama: Euler-Maruyama on the Bloch form of the conditional
///    master equation, driven by Gaussian dW.
///  - two_outcome: one application of the two-outcome measurement with
///    kappa = 1/2 - sqrt(2 gamma dt), equivalent to dW = +-sqrt(dt).
enum class SdeScheme { two_outcome, euler_maruyama };

std::string to_string(SdeScheme s);
SdeScheme parse_scheme(const std::string& text);

struct SdeConfig {
  double gamma = 1.0;
  double dt = 1e-3;
  double total_time = 1.0;
  SdeScheme scheme = SdeScheme::two_outcome;

  // Throws ConfigError unless gamma > 0, dt > 0, T >= 0, 8 gamma dt <= 0.1.
  void validate() const;
  std::size_t steps() const;
};

/// Euler-Maruyama step of
///   d rho = -gamma [sz,[sz,rho]] dt + sqrt(2 gamma)(sz rho + rho sz - 2<sz> rho) dW
/// in Bloch form:
///   d ax = -4 gamma ax dt - 2 sqrt(2 gamma) az ax dW   (ay likewise)
///   d az = 2 sqrt(2 gamma) (1 - az^2) dW.
/// A result outside the unit ball is scaled back onto the sphere and counted
/// in `clamp_events` when a counter is given.
BlochState<double> sde_step(const BlochState<double>& s, double gamma, double dt, double dw,
                            std::uint64_t* clamp_events = nullptr);

struct Trajectory {
  EntropyCurve curve;  // P at t = 0 and every `record_every` steps, plus T
  BlochState<double> final_state;
  std::uint64_t clamp_events = 0;
};

/// Runs one conditioned trajectory; the strategy's rotation is applied exactly
/// after every step.
Trajectory simulate_trajectory(const BlochState<double>& initial, const SdeConfig& cfg,
                               const Strategy& strategy, CounterRng& rng,
                               std::size_t record_every = 1);

}  // namespace qfb
