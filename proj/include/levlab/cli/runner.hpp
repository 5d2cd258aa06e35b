#pragma once

#include <iosfwd>

#include "levlab/cli/config.hpp"
#include "levlab/cli/report.hpp"

namespace levlab::cli {

/// Default tolerance of each command, used when the config gives none.
double default_tol(const std::string& command);

/// Executes a validated config. Numerical failures inside a row mark that row
/// failed; invalid input propagates.
Report run(const RunConfig& cfg);

enum ExitCode { kExitPass = 0, kExitCheckFailed = 1, kExitInvalid = 2 };

/// validate + run + write report/plot + summary. Returns the process exit code.
int run_main(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace levlab::cli
