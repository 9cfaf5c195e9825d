#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace jacq::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitDefect = 2;

/// One jacq invocation. `args` excludes the program name. Machine-readable
/// output goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace jacq::cli
