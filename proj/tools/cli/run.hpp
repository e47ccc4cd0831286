#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace shiftop::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitUndecidable = 3;

// args excludes the program name.
int run(std::vector<std::string> const& args, std::ostream& out, std::ostream& err);

}  // namespace shiftop::cli
