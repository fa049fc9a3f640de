#include "qfb/optimality.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "qfb/errors.hpp"
#include "qfb/feedback.hpp"

namespace qfb {
namespace {

struct Search {
  const OptimalityConfig& cfg;
  MeasurementStrength<double> m;
  std::vector<double> grid;
  std::size_t mid;
  double shrink;  // 1 - b^2
  OptimalityReport& report;

  // Best average final entropy from `s` with `remaining` steps left.
  double best(const BlochState<double>& s, std::size_t remaining, std::vector<double>* record) {
    const double entropy = linear_entropy(s);
    if (remaining == 0) return entropy;
    ++report.decision_nodes;
    const double bound = std::pow(shrink, static_cast<double>(remaining)) * entropy;

    std::vector<double> values(grid.size());
    for (std::size_t j = 0; j < grid.size(); ++j) {
      const auto tilted = tilt_to(s, grid[j]);
      const auto [p_plus, p_minus] = outcome_probabilities(tilted, m);
      double v = 0;
      for (int sign : {1, -1}) {
        ++report.nodes_evaluated;
        const double p = sign > 0 ? p_plus : p_minus;
        if (p <= 0) continue;
        v += p * best(post_measurement_state(tilted, m, sign), remaining - 1, nullptr);
      }
      values[j] = v;
      const double gap = v - bound;
      report.min_gap = std::min(report.min_gap, gap);
      if (gap < -cfg.tolerance) ++report.bound_violations;
    }

    const double vmin = *std::min_element(values.begin(), values.end());
    if (values[mid] > vmin + cfg.tolerance) ++report.minimizer_violations;
    if (entropy > 1e-9 && entropy < 0.5 - 1e-9) {
      for (std::size_t j = 0; j < grid.size(); ++j)
        if (j != mid && values[j] <= values[mid] + cfg.tolerance) {
          ++report.non_strict_nodes;
          break;
        }
    }
    if (record) *record = values;
    return vmin;
  }
};

void build_optimal_tree(StrategyTree& tree, const BlochState<double>& s,
                        const MeasurementStrength<double>& m, std::size_t depth,
                        std::uint32_t path, double branch_p, double path_p) {
  const bool leaf = depth == tree.depth;
  tree.nodes.push_back(
      {depth, path, branch_p, path_p, linear_entropy(s), leaf ? 0.0 : std::numbers::pi / 2});
  if (leaf) {
    tree.value += path_p * linear_entropy(s);
    return;
  }
  const auto tilted = tilt_to(s, std::numbers::pi / 2);
  const auto [p_plus, p_minus] = outcome_probabilities(tilted, m);
  build_optimal_tree(tree, post_measurement_state(tilted, m, 1), m, depth + 1, path, p_plus,
                     path_p * p_plus);
  build_optimal_tree(tree, post_measurement_state(tilted, m, -1), m, depth + 1,
                     path | (1u << depth), p_minus, path_p * p_minus);
}

}  // namespace

bool OptimalityReport::passed() const {
  return minimizer_violations == 0 && bound_violations == 0 &&
         minimum >= closed_form - config.tolerance &&
         std::abs(minimum - closed_form) <= config.tolerance;
}

std::uint64_t enumeration_size(std::size_t n_steps, std::size_t grid_points) {
  const double per_level = 2.0 * static_cast<double>(grid_points);
  double total = 0;
  double level = 1;
  for (std::size_t k = 0; k < n_steps; ++k) {
    level *= per_level;
    total += level;
  }
  if (total > 1.8e19) return std::numeric_limits<std::uint64_t>::max();
  return static_cast<std::uint64_t>(total);
}

BlochState<double> tilt_to(const BlochState<double>& s, double theta) {
  if (s.squared_norm() == 0) return s;
  return apply_strategy(Strategy{StrategyKind::fixed_theta, theta, {}}, s);
}

double policy_value(const BlochState<double>& initial, const MeasurementStrength<double>& m,
                    std::size_t steps, const ThetaPolicy& policy) {
  std::function<double(const BlochState<double>&, std::size_t)> go =
      [&](const BlochState<double>& s, std::size_t step) -> double {
    if (step == steps) return linear_entropy(s);
    const auto tilted = tilt_to(s, policy(step, s));
    const auto [p_plus, p_minus] = outcome_probabilities(tilted, m);
    double v = 0;
    if (p_plus > 0) v += p_plus * go(post_measurement_state(tilted, m, 1), step + 1);
    if (p_minus > 0) v += p_minus * go(post_measurement_state(tilted, m, -1), step + 1);
    return v;
  };
  return go(initial, 0);
}

OptimalityReport verify_optimality(const OptimalityConfig& cfg) {
  if (cfg.n_steps < 1 || cfg.n_steps > 4) throw ConfigError("n_steps must lie in 1..4");
  if (!(cfg.b_step > 0 && cfg.b_step < 1)) throw ConfigError("b_step must lie in (0, 1)");
  if (!(cfg.p0 >= 0 && cfg.p0 <= 0.5)) throw ConfigError("P0 must lie in [0, 1/2]");
  if (cfg.grid_points < 3 || cfg.grid_points % 2 == 0)
    throw ConfigError("grid_points must be odd and >= 3 so the grid contains pi/2");
  const auto size = enumeration_size(cfg.n_steps, cfg.grid_points);
  if (size > cfg.node_budget)
    throw BudgetExceeded("enumeration needs " + std::to_string(size) +
                         " nodes, over the budget of " + std::to_string(cfg.node_budget));

  OptimalityReport report;
  report.config = cfg;
  report.min_gap = std::numeric_limits<double>::infinity();

  Search search{cfg, MeasurementStrength<double>::from_b(cfg.b_step), {}, (cfg.grid_points - 1) / 2,
                1 - cfg.b_step * cfg.b_step, report};
  for (std::size_t k = 0; k < cfg.grid_points; ++k)
    search.grid.push_back(k == search.mid ? std::numbers::pi / 2
                                          : std::numbers::pi * static_cast<double>(k) /
                                                static_cast<double>(cfg.grid_points - 1));

  const auto initial = BlochState<double>::from_spherical(cfg.p0, std::numbers::pi / 2);
  report.root_grid = search.grid;
  report.minimum = search.best(initial, cfg.n_steps, &report.root_values);
  report.closed_form = std::pow(search.shrink, static_cast<double>(cfg.n_steps)) * cfg.p0;

  report.optimal_tree.depth = cfg.n_steps;
  build_optimal_tree(report.optimal_tree, initial, search.m, 0, 0, 1, 1);
  return report;
}

}  // namespace qfb
