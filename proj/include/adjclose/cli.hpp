#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace adjclose {

/// Exit statuses of the command-line tool.
enum ExitCode : int {
    kExitOk = 0,
    kExitInput = 1,        // unreadable file, parse error, bad flag
    kExitDomain = 2,       // data parsed but a precondition failed
    kExitDiscrepancy = 3,  // audit found discrepancies
};

/// Runs one invocation. `args` excludes the program name. Normal output goes
/// to `out` unless `--out` names a file; warnings and errors go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Security name for a price file: the file name up to its first `_` or `.`,
/// upper-cased (`shy_data.csv` -> `SHY`).
std::string security_from_path(const std::string& path);

}  // namespace adjclose
