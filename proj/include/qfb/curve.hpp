#pragma once

#include <string>
#include <vector>

namespace qfb {

enum class Provenance { analytic, quadrature, monte_carlo, discrete_exact };

std::string to_string(Provenance p);

/// Sampled linear entropy P(t).
struct EntropyCurve {
  std::vector<double> times;
  std::vector<double> values;
  Provenance provenance = Provenance::analytic;
  std::vector<double> stderr_values;  // empty unless Monte Carlo

  std::size_t size() const { return times.size(); }

  // Times strictly increasing and values in [0, 1/2].
  bool is_valid() const;
  bool is_non_increasing() const;
};

}  // namespace qfb
