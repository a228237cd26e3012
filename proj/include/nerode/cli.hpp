#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nerode::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_usage = 1;
inline constexpr int exit_invalid = 2;
inline constexpr int exit_parse = 3;
inline constexpr int exit_resource = 4;

// Runs one command; args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nerode::cli
