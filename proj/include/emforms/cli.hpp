#pragma once

// Batch verification front end.  Parses a verb plus configuration, runs the
// requested residual suites, and emits a human-readable or JSON report.
// Exit codes: 0 all residuals zero, 1 at least one NonZero, 2 parse or
// configuration error, 3 Indeterminate verdict present.

#include <iosfwd>
#include <string>
#include <vector>

namespace emforms {

// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);
int run_cli(int argc, char** argv);

}  // namespace emforms
