#include "qfb/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include <Eigen/Dense>

#include "qfb/random.hpp"

namespace qfb {

void EnsembleConfig::validate() const {
  if (n_trajectories < 1) throw ConfigError("n_trajectories must be >= 1");
  if (record_every < 1) throw ConfigError("record_every must be >= 1");
  if (workers < 1) throw ConfigError("workers must be >= 1");
  if (!(p0 >= 0 && p0 <= 0.5)) throw ConfigError("P0 must lie in [0, 1/2]");
  sde.validate();
}

EnsembleStats run_ensemble(const EnsembleConfig& cfg) {
  cfg.validate();
  const auto initial = BlochState<double>::from_spherical(cfg.p0, std::numbers::pi / 2);

  // Shape of the recorded curve is identical for every trajectory.
  const std::size_t n_steps = cfg.sde.steps();
  std::vector<double> times{0.0};
  for (std::size_t k = 0; k < n_steps; ++k)
    if ((k + 1) % cfg.record_every == 0 || k + 1 == n_steps)
      times.push_back(static_cast<double>(k + 1) * cfg.sde.dt);

  const auto n = static_cast<Eigen::Index>(cfg.n_trajectories);
  const auto points = static_cast<Eigen::Index>(times.size());
  Eigen::MatrixXd samples(n, points);  // row k = trajectory k
  std::vector<std::uint64_t> clamps(cfg.n_trajectories, 0);

  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&](std::size_t first, std::size_t stride) {
    try {
      for (std::size_t k = first; k < cfg.n_trajectories; k += stride) {
        auto rng = derive_stream(cfg.master_seed, k);
        const auto traj = simulate_trajectory(initial, cfg.sde, cfg.strategy, rng, cfg.record_every);
        samples.row(static_cast<Eigen::Index>(k)) =
            Eigen::Map<const Eigen::RowVectorXd>(traj.curve.values.data(), points);
        clamps[k] = traj.clamp_events;
      }
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  };

  const std::size_t workers = std::min(cfg.workers, cfg.n_trajectories);
  if (workers == 1) {
    work(0, 1);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work, w, workers);
  }
  if (failure) std::rethrow_exception(failure);

  // Fixed reduction order: ascending trajectory index.
  EnsembleStats stats;
  stats.mean_curve.provenance = Provenance::monte_carlo;
  stats.mean_curve.times = times;
  stats.mean_curve.values.assign(times.size(), 0.0);
  stats.mean_curve.stderr_values.assign(times.size(), 0.0);
  const double count = static_cast<double>(n);
  for (Eigen::Index j = 0; j < points; ++j) {
    double sum = 0;
    for (Eigen::Index k = 0; k < n; ++k) sum += samples(k, j);
    const double mean = sum / count;
    double ss = 0;
    for (Eigen::Index k = 0; k < n; ++k) ss += (samples(k, j) - mean) * (samples(k, j) - mean);
    stats.mean_curve.values[static_cast<std::size_t>(j)] = mean;
    stats.mean_curve.stderr_values[static_cast<std::size_t>(j)] =
        n > 1 ? std::sqrt(ss / (count - 1) / count) : 0.0;
  }
  stats.per_trajectory_final.resize(cfg.n_trajectories);
  for (Eigen::Index k = 0; k < n; ++k)
    stats.per_trajectory_final[static_cast<std::size_t>(k)] = samples(k, points - 1);
  for (auto c : clamps) stats.clamp_events += c;
  stats.total_steps = static_cast<std::uint64_t>(n_steps) * cfg.n_trajectories;
  return stats;
}

}  // namespace qfb
