#pragma once

// The fhlab command-line tool as a library: run() takes the argument list
// (without the program name) and returns the process exit code.
//
// Exit codes: 0 success, 1 a checked property failed, 2 bad arguments or input.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace fhlab::cli {

inline constexpr const char* kToolName = "fhlab";
inline constexpr const char* kVersion = "0.1.0";

inline constexpr int kExitOk = 0;
inline constexpr int kExitPropertyFailure = 1;
inline constexpr int kExitUsage = 2;

/// Default caps: ground size, trial/sample counts and the n-cap (largest
/// exhaustive search size). FHLAB_CAP_GROUND, FHLAB_CAP_TRIALS and FHLAB_CAP_N
/// override the defaults; command-line flags override both.
struct Caps {
  std::uint64_t ground = 1u << 20;
  std::uint64_t trials = 10000;
  std::uint64_t n = 12;
};

/// Throws std::invalid_argument on a malformed or zero environment value.
Caps default_caps();

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fhlab::cli
