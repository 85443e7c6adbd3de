#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dciga::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;

/// Runs one command line. `args` excludes the program name. Results go to
/// `out` unless -o is given; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dciga::cli
