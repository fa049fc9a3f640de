#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "qfb/curve.hpp"

namespace qfb {

inline constexpr std::string_view kVersion = "1.0.0";

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int failure = 1;
inline constexpr int config = 2;
inline constexpr int convergence = 3;
}  // namespace exit_code

/// Entry point shared by the `qfb` binary and the tests. args excludes argv[0].
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Shortest decimal form that round-trips a double (17 significant digits).
std::string format_double(double x);

// FNV-1a 64-bit digest as 16 hex digits.
std::string fnv1a64_hex(std::string_view bytes);

/// Line plot as a standalone SVG document.
std::string render_svg(const std::vector<double>& x, const std::vector<double>& y,
                       const std::string& title, const std::string& x_label,
                       const std::string& y_label);

}  // namespace qfb
