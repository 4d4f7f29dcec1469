#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace convexcd::cli {

inline constexpr int kExitSeparated = 0;
inline constexpr int kExitMismatch = 1;
inline constexpr int kExitError = 2;
inline constexpr int kExitIntersecting = 10;

/// Signed distances used by bench, gen-suite and trace when none are given.
std::vector<double> default_distance_grid();

/// Runs the convexcd command line (without the program name) and returns the
/// process exit code. Nothing is written to std::cout or std::cerr directly.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace convexcd::cli
