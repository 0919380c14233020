#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace pmsim::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kConfigError = 1;
inline constexpr int kNumericalError = 2;

// Runs one command line (args excludes the program name). The JSON summary goes
// to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pmsim::cli
