#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lca::cli {

// Exit codes.
constexpr int kOk = 0;
constexpr int kMismatch = 1;
constexpr int kInputError = 2;
constexpr int kInconclusive = 3;

/// Runs one command line (without the program name). Reports go to `out`,
/// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lca::cli
