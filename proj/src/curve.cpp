#include "qfb/curve.hpp"

namespace qfb {

std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::analytic: return "analytic";
    case Provenance::quadrature: return "quadrature";
    case Provenance::monte_carlo: return "monte_carlo";
    case Provenance::discrete_exact: return "discrete_exact";
  }
  return "unknown";
}

bool EntropyCurve::is_valid() const {
  if (times.size() != values.size()) return false;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(values[i] >= 0 && values[i] <= 0.5)) return false;
    if (i > 0 && !(times[i] > times[i - 1])) return false;
  }
  return true;
}

bool EntropyCurve::is_non_increasing() const {
  for (std::size_t i = 1; i < values.size(); ++i)
    if (values[i] > values[i - 1]) return false;
  return true;
}

}  // namespace qfb
