#pragma once

// The meadowlab command line, callable in-process.

#include <ostream>
#include <string>
#include <vector>

namespace meadow {

/// Runs one meadowlab invocation; args excludes the program name. Returns
/// 0 (holds / accepted), 1 (counterexample / rejected) or 2 (usage error).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace meadow
