#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mbtd {

enum ExitCode : int { kExitOk = 0, kExitVerdictFail = 1, kExitUsage = 2, kExitBudget = 3 };

/// The `mbtd` command line without argv[0]. Graph arguments accept a file
/// path, "-" for `in`, or "family:p1,p2" for a built-in generator.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace mbtd
