#pragma once

#include <cstdint>
#include <vector>

#include "qfb/continuum.hpp"
#include "qfb/curve.hpp"
#include "qfb/feedback.hpp"

namespace qfb {

struct EnsembleConfig {
  std::size_t n_trajectories = 1000;
  std::uint64_t master_seed = 1;
  SdeConfig sde;
  Strategy strategy = Strategy::optimal();
  std::size_t record_every = 1;
  double p0 = 0.5;  // initial state (sqrt(1 - 2 P0), 0, 0)
  // Scheduling only; results do not depend on it.
  std::size_t workers = 1;

  void validate() const;
};

struct EnsembleStats {
  EntropyCurve mean_curve;  // monte_carlo, stderr_values filled
  std::vector<double> per_trajectory_final;
  std::uint64_t clamp_events = 0;
  std::uint64_t total_steps = 0;
};

/// Runs cfg.n_trajectories independent trajectories; trajectory k draws from
/// derive_stream(master_seed, k). Output is a pure function of cfg minus
/// `workers`.
EnsembleStats run_ensemble(const EnsembleConfig& cfg);

}  // namespace qfb
