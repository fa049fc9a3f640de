#include "qfb/feedback.hpp"

#include <charconv>
#include <cstdio>

namespace qfb {

std::string to_string(const Strategy& s) {
  switch (s.kind) {
    case StrategyKind::optimal: return "optimal";
    case StrategyKind::none: return "none";
    case StrategyKind::fixed_theta: {
      char buf[64];
      std::snprintf(buf, sizeof buf, "fixed-theta=%.17g", s.theta);
      return buf;
    }
    case StrategyKind::custom_schedule: return "custom-schedule";
  }
  return "unknown";
}

Strategy parse_strategy(const std::string& text) {
  if (text == "optimal") return Strategy::optimal();
  if (text == "none") return Strategy::none();
  const std::string prefix = "fixed-theta=";
  if (text.rfind(prefix, 0) == 0) {
    const std::string num = text.substr(prefix.size());
    double theta = 0;
    const auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), theta);
    if (ec != std::errc() || ptr != num.data() + num.size() || num.empty())
      throw ConfigError("cannot parse fixed-theta angle '" + num + "'");
    return Strategy::fixed_theta(theta);
  }
  throw ConfigError("unknown strategy '" + text + "' (expected optimal|none|fixed-theta=X)");
}

}  // namespace qfb
