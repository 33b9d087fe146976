#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace balfilt {

/// Command dispatch behind the `balfilt` binary, testable in-process.
/// Exit codes: 0 success, 1 a requested boolean verdict was false,
/// 2 input error, 3 internal certification fault.
int run_command(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
                std::ostream& err);

}  // namespace balfilt
