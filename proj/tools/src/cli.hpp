#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mfhj::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitNotConverged = 3;

/// Runs one command line (program name excluded). Records go to `out`
/// unless --out names a file; diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace mfhj::cli
