#pragma once

#include <iosfwd>

namespace modflow {

inline constexpr const char* kToolVersion = "0.1.0";

/// Exit codes: 0 a verdict was produced, 1 a guard refused, 2 bad input.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace modflow
