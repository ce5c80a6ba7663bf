#pragma once

#include <exception>
#include <ostream>
#include <string>
#include <vector>

namespace tailsep::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitNonConvergence = 3;

// Exit code for an exception escaping a subcommand.
int exit_code_for(const std::exception& e);

// Runs one subcommand. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tailsep::cli
