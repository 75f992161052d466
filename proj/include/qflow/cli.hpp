#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qflow {

/// Dispatches a command line to the engine and writes the run report to
/// `out`. Returns the process exit code: 0 all checks pass, 1 a check
/// failed, 2 usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

} // namespace qflow
