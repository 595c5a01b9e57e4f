// cli.hpp
// Subcommand front end. Exit codes: 0 success, 1 runtime/domain error,
// 2 usage error. Identical argv (including seed) produces byte-identical
// output.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace noonsim::cli {

inline constexpr const char* kVersion = "0.1.0";

// Runs one subcommand; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace noonsim::cli
