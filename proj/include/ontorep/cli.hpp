#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ontorep/evolution.hpp"

namespace ontorep::cli {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int findings = 1;  // check: errors found; evolve: inconsistent individuals
inline constexpr int disagreement = 2;
inline constexpr int usage = 64;
inline constexpr int input = 65;
inline constexpr int internal = 70;
}  // namespace exit_code

/// Exit code of `evolve` for a finished report.
int evolve_exit_code(const EvolutionReport& report);

/// Runs one command. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ontorep::cli
