#pragma once

#include <iosfwd>
#include <string>

namespace infoprice::cli {

/// Exit codes of the infoprice tool.
enum ExitCode : int {
    kOk = 0,
    kVerifyFailed = 1,
    kUsage = 2,
    kConfig = 3,
};

/// Entry point shared by main() and the tests.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Parses a real written as a number, a fraction "p/q", or an expression in
/// tau_prime ("tau_prime", "tau_prime/2", "2*tau_prime").
double parse_real(const std::string& text, double tau_prime_value);

}  // namespace infoprice::cli
