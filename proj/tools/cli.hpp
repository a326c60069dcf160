#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace polyvol::cli {

/// Exit codes shared by every subcommand.
enum ExitCode : int {
  kOk = 0,
  kUsage = 2,
  kBoundary = 3,
  kEmpty = 4,
};

inline constexpr double kDefaultTol = 1e-8;
inline constexpr unsigned long long kDefaultSeed = 20240607;

/// Entry point for `polyvol volume | feasible | maximize | sweep`.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

/// Convenience overload; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace polyvol::cli
