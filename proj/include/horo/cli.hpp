#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "horo/horoboundary.hpp"

namespace horo {

/// Shared options of every subcommand.
struct RunConfig {
  std::string group;  // file path or builtin:NAME
  int radius_budget = 40;
  std::size_t memory_budget = 8'000'000;  // stored elements per search
  double time_budget = 0;                 // seconds, recorded only
  std::string cache_dir;
  std::string format = "json";
  std::string out;
  std::uint64_t seed = 1;
  int threads = 1;
};

/// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitDomain = 2;
inline constexpr int kExitBudget = 3;
inline constexpr int kExitParse = 4;

/// builtin:z2, builtin:z3, builtin:h1, builtin:h1z, builtin:h2, builtin:cartan,
/// otherwise a JSON group file.
MarkedGroup resolve_group(const std::string& spec);

/// JSON object, "digitized:a,b", "periodic:BLOCK" or "periodic:PREFIX|BLOCK".
RaySpec parse_ray_argument(std::string_view text);

/// Runs one command line (without the program name). The JSON report goes to
/// `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace horo
