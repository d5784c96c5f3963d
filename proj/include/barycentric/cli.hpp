#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bary::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kVerificationFailed = 1;
inline constexpr int kInputError = 2;
inline constexpr int kDomainError = 3;

// Runs one CLI invocation; args[0] is the program name. Results go to `out`
// (or the --out file), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bary::cli
