#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace circle_cs::cli {

enum ExitCode : int {
    kSuccess = 0,
    kInternalError = 1,
    kBadArguments = 2,
    kToleranceFailure = 3,
    kIoFailure = 4,
};

/// Parses "1.25", "pi", "-pi/2", "3pi/4", "0.5pi". Returns nullopt on
/// anything else or a non-finite result.
std::optional<double> parse_angle(std::string_view text);

/// Runs one invocation. `args` excludes the program name. Data goes to
/// `out` unless --out is given; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace circle_cs::cli
