#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace limsup::cli {

inline constexpr const char* kVersion = "0.3.0";

inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitHypothesis = 2;
inline constexpr int kExitUsage = 64;

// Runs one limsup-lab invocation; args excludes the program name. JSON goes to `out`,
// diagnostics and usage text to `err`.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace limsup::cli
