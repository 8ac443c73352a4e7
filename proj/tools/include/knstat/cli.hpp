#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace knstat::cli {

enum ExitCode : int {
    kOk = 0,
    kToleranceExceeded = 1,
    kUsageError = 2,
    kOverflow = 3,
};

/// Default worker count when --threads is absent.
inline constexpr const char* kThreadsEnv = "KNSTAT_THREADS";

/// Runs one command line (args exclude the program name). Normal output goes
/// to out unless --output names a file; diagnostics go to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(int argc, const char* const* argv);

} // namespace knstat::cli
