#pragma once

#include <iosfwd>

namespace baltic {

inline constexpr const char* kToolName = "baltic-eval";
inline constexpr const char* kToolVersion = "0.1.0";

/// Entry point of the baltic-eval command line. Reports go to `out` (or the
/// --out file), diagnostics to `err`. Returns 0 on success, 2 when an input
/// file cannot be read or written, 1 on any other failure.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace baltic
