#pragma once

// Command-line front end. `run` parses arguments and dispatches to one of
// simulate, estimate, bounds, dsep, stocks. Every subcommand writes a
// metadata.json into its output directory.

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace causalpath::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;      // bad flags, files, or preconditions
inline constexpr int kExitNumerical = 3;  // non-ergodic model, zero-probability path, ...

inline constexpr std::string_view kVersion = "1.0.0";
inline constexpr std::string_view kOutEnv = "CAUSALPATH_OUT";
inline constexpr std::string_view kDefaultOut = "causalpath-out";

/// args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace causalpath::cli
