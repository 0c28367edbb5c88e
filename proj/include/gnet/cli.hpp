#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gnet::cli {

/// Process exit codes.
enum ExitCode : int {
  kOk = 0,
  kConfigError = 2,   // bad flags, config file or hyper-parameter values
  kDataError = 3,     // unreadable / malformed data, shape or label problems
  kNumericError = 4,  // factorization failure or non-finite weights
};

/// Entry point shared by the executable and the tests. `args` excludes the
/// program name. Data goes to `out`, diagnostics and the resolved
/// configuration to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// "2^-12", "0.000244140625" and "1e-3" all parse; anything else,
/// or a non-positive result, throws ParameterError.
double parse_positive(const std::string& text, const std::string& what);

}  // namespace gnet::cli
