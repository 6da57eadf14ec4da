#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mzls::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kValidationError = 2;
inline constexpr int kNumericalFailure = 3;
inline constexpr int kIoError = 4;

// Runs one subcommand (gen, mz, fit, eval, quad, lebesgue, sweep, selftest).
// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mzls::cli
