#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fotrans::cli {

enum ExitCode : int {
    kSuccess = 0,
    kFail = 1,
    kUsage = 2,
    kLimit = 3,
};

/// Runs one command. args excludes the program name. Nothing is written outside `out` and
/// `err` except files named by an --out option.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// RFC 4180 field quoting: fields holding a comma, quote or line break are quoted, with quotes doubled.
std::string csv_field(const std::string& value);

}  // namespace fotrans::cli
