// Command-line front end; exit codes 0 ok, 2 usage, 3 unsupported level,
// 4 mathematical inconsistency.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace weilform {

enum ExitCode { kExitOk = 0, kExitUsage = 2, kExitUnsupported = 3, kExitInconsistent = 4 };

int64_t default_order();  // WEILFORM_ORDER or 200

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace weilform
