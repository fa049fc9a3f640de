#include "qfb/continuum.hpp"

#include <cmath>

#include "qfb/measurement.hpp"

namespace qfb {

std::string to_string(SdeScheme s) {
  return s == SdeScheme::two_outcome ? "two-outcome" : "euler-maruyama";
}

SdeScheme parse_scheme(const std::string& text) {
  if (text == "two-outcome") return SdeScheme::two_outcome;
  if (text == "euler-maruyama") return SdeScheme::euler_maruyama;
  throw ConfigError("unknown scheme '" + text + "' (expected two-outcome|euler-maruyama)");
}

void SdeConfig::validate() const {
  if (!(gamma > 0)) throw ConfigError("gamma must be positive");
  if (!(dt > 0)) throw ConfigError("dt must be positive");
  if (!(total_time >= 0) || !std::isfinite(total_time)) throw ConfigError("time must be >= 0");
  if (8 * gamma * dt > 0.1 * (1 + 1e-12))
    throw StepTooLarge("8*gamma*dt exceeds the stability budget 0.1");
}

std::size_t SdeConfig::steps() const {
  return static_cast<std::size_t>(std::llround(total_time / dt));
}

BlochState<double> sde_step(const BlochState<double>& s, double gamma, double dt, double dw,
                            std::uint64_t* clamp_events) {
  const double noise = 2 * std::sqrt(2 * gamma) * dw;
  const double transverse = 1 - 4 * gamma * dt - noise * s.z();
  Vec3<double> a(s.x() * transverse, s.y() * transverse, s.z() + noise * (1 - s.z() * s.z()));
  const double n2 = a.squaredNorm();
  if (n2 > 1) {
    a /= std::sqrt(n2);
    if (clamp_events) ++*clamp_events;
  }
  return BlochState<double>(a);
}

Trajectory simulate_trajectory(const BlochState<double>& initial, const SdeConfig& cfg,
                               const Strategy& strategy, CounterRng& rng,
                               std::size_t record_every) {
  cfg.validate();
  if (record_every < 1) throw ConfigError("record_every must be >= 1");
  const std::size_t n = cfg.steps();
  const auto strength = strength_from_rate(cfg.gamma, cfg.dt);
  const double sqrt_dt = std::sqrt(cfg.dt);

  Trajectory out;
  out.curve.provenance = Provenance::monte_carlo;
  const std::size_t points = n / record_every + 2;
  out.curve.times.reserve(points);
  out.curve.values.reserve(points);
  out.curve.times.push_back(0.0);
  out.curve.values.push_back(linear_entropy(initial));

  BlochState<double> state = initial;
  for (std::size_t k = 0; k < n; ++k) {
    if (cfg.scheme == SdeScheme::two_outcome) {
      state = measure_step(state, strength, rng.uniform()).post_state;
    } else {
      state = sde_step(state, cfg.gamma, cfg.dt, sqrt_dt * rng.normal(), &out.clamp_events);
    }
    state = apply_strategy(strategy, state, k);
    if ((k + 1) % record_every == 0 || k + 1 == n) {
      out.curve.times.push_back(static_cast<double>(k + 1) * cfg.dt);
      out.curve.values.push_back(linear_entropy(state));
    }
  }
  out.final_state = state;
  return out;
}

}  // namespace qfb
