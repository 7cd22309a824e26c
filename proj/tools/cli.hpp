#ifndef CODIAG_TOOLS_CLI_HPP
#define CODIAG_TOOLS_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

/// Runs the command-line interface on `args` (without the program name),
/// writing reports to `out` and diagnostics to `err`. Returns the process
/// exit code: 0 = codiagnosable/success, 1 = not codiagnosable (witness
/// written), 2 = input error, 3 = budget exceeded.
int cli_run(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

#endif
