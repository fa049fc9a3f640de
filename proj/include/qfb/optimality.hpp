#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "qfb/bloch.hpp"
#include "qfb/measurement.hpp"

namespace qfb {

/// One node of the optimal strategy tree: the state after `depth` measurement
/// steps reached through the outcomes in `path` (bit k = 1 for outcome -1 at
/// step k).
struct TreeNode {
  std::size_t depth = 0;
  std::uint32_t path = 0;
  double branch_probability = 1;  // conditional on the parent
  double path_probability = 1;
  double entropy = 0;
  double theta = 0;  // polar angle chosen before the next step
};

struct StrategyTree {
  std::size_t depth = 0;
  std::vector<TreeNode> nodes;
  double value = 0;  // sum over leaves of path_probability * entropy
};

struct OptimalityConfig {
  std::size_t n_steps = 3;
  double b_step = 0.2;
  std::size_t grid_points = 37;  // polar angles k*pi/(grid_points-1)
  double p0 = 0.25;
  std::uint64_t node_budget = 100'000'000;
  double tolerance = 1e-12;
};

struct OptimalityReport {
  OptimalityConfig config;
  double minimum = 0;        // best average final entropy over all strategies
  double closed_form = 0;    // (1 - b^2)^n P0
  std::uint64_t nodes_evaluated = 0;
  std::uint64_t decision_nodes = 0;
  // Decision nodes where theta = pi/2 failed to attain the minimum.
  std::uint64_t minimizer_violations = 0;
  // Decision nodes with 0 < P < 1/2 where some other grid angle tied the minimum.
  std::uint64_t non_strict_nodes = 0;
  // Choices whose value fell below (1 - b^2)^k P - tolerance.
  std::uint64_t bound_violations = 0;
  double min_gap = 0;  // min over choices of value - (1 - b^2)^k P
  StrategyTree optimal_tree;
  // Root: best value obtainable after fixing each grid angle at the first step.
  std::vector<double> root_grid;
  std::vector<double> root_values;

  bool passed() const;
};

// Number of (angle, outcome) nodes visited by an exhaustive search.
std::uint64_t enumeration_size(std::size_t n_steps, std::size_t grid_points);

/// Rotates s (keeping its azimuth) so its polar angle becomes theta.
BlochState<double> tilt_to(const BlochState<double>& s, double theta);

using ThetaPolicy = std::function<double(std::size_t step, const BlochState<double>&)>;

/// Exact average final entropy after `steps` measurements when `policy`
/// chooses the polar angle before each one. Both outcomes are enumerated.
double policy_value(const BlochState<double>& initial, const MeasurementStrength<double>& m,
                    std::size_t steps, const ThetaPolicy& policy);

/// Exhaustive search over every adaptive strategy that picks a grid angle at
/// each node. Throws BudgetExceeded if the tree exceeds config.node_budget.
OptimalityReport verify_optimality(const OptimalityConfig& config);

}  // namespace qfb
