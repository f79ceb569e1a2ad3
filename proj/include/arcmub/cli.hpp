#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace arcmub::cli {

inline constexpr const char* kVersion = "0.1.0";

/// Runs one `arcmub` invocation; args exclude the program name. Returns 0 on
/// success, 1 when a check ran and failed, 2 on usage or parse errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace arcmub::cli
