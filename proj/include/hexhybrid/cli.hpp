#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hexhybrid {

inline constexpr const char* kToolVersion = "0.1.0";

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitUsage = 2,
  kExitLoad = 3,
  kExitGeneration = 4,
  kExitVerification = 5,
};

// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Board sketch with a manager annotation line per faction.
struct GameState;
std::string board_sketch(const GameState& state);

}  // namespace hexhybrid
