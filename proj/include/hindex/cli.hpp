#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hindex::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitComputation = 1;
inline constexpr int kExitUsage = 2;

/// Runs one command. `args` excludes the program name. The report goes to
/// `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// "sha256:<hex>" of the bytes.
std::string content_digest(const std::string& bytes);

}  // namespace hindex::cli
