#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "montyhall/rational.hpp"

namespace montyhall::cli {

/// Exit codes: 0 success, 1 a Monte Carlo z-threshold was violated,
/// 2 usage error, 3 runtime failure.
inline constexpr int kExitOk = 0;
inline constexpr int kExitThreshold = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitFailure = 3;

/// Entry point behind the montyhall executable. Subcommands: simulate,
/// analyze, optimize, export, estimate, serve.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Parses a probability grid given as one value ("1/2"), a comma list
/// ("0,1/4,1"), or a range ("0..1" "step" "1/4", also "0..1:1/4").
std::vector<Probability> parse_grid(const std::vector<std::string>& tokens);

}  // namespace montyhall::cli
