#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cfrac::cli {

// Exit codes.
inline constexpr int kExitPass = 0;
inline constexpr int kExitCertificateFailure = 1;
inline constexpr int kExitParseError = 2;
inline constexpr int kExitDomainError = 3;

/// Runs one command; args excludes the program name. The JSON report goes
/// to out, diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cfrac::cli
