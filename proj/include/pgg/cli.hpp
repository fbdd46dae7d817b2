#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pgg {

// Runs one CLI invocation (args exclude the program name). The machine
// payload is a single JSON document on `out`; human-readable notes go to
// `err`. Exit status: 0 = command ran (whatever the decision), 2 = usage or
// parse error, 3 = capacity or budget exhausted.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pgg
