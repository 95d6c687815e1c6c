#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace irreg {

namespace exit_code {
constexpr int ok = 0;
constexpr int verify_failed = 1;
constexpr int retries_exhausted = 2;
constexpr int regime_failure = 3;
constexpr int cap_exceeded = 4;
constexpr int usage = 64;
constexpr int parse = 65;
constexpr int io = 66;
constexpr int internal = 70;
}  // namespace exit_code

/// Entry point of the `irreg` tool; `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace irreg
