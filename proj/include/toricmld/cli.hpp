#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace toricmld::cli {

// Exit codes of the toricmld command.
inline constexpr int kOk = 0;
// Usage, parse, validation or I/O error.
inline constexpr int kFailure = 1;
// mld --brute-force: the oracle disagrees.
inline constexpr int kOracleMismatch = 2;
// witness: mld(Y) exceeds delta.
inline constexpr int kPrecondition = 3;
// check: the ε–δ inequality does not hold.
inline constexpr int kInequalityViolated = 4;
// witness: the constructed point fails an internal consistency check.
inline constexpr int kInternal = 5;

// Runs `toricmld <args...>`; data goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace toricmld::cli
