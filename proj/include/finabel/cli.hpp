#pragma once

#include <string>
#include <vector>

namespace finabel {

/// Outcome of one command invocation: everything the process wrapper needs
/// to finish up. Keeping the driver free of global I/O makes commands
/// directly testable and guarantees byte-deterministic reports.
struct CommandResult {
    int exit_code = 0;  ///< 0 success, 1 mathematical claim failed, 2 input error
    std::string out;    ///< report text (already newline-terminated JSON)
    std::string err;    ///< diagnostics for exit codes 1 and 2
};

/// Runs one subcommand given the process arguments (without the program
/// name). Commands are pure: identical arguments and input files produce
/// byte-identical output.
///
/// Subcommands: classify, charfn, check-independence, verify-thm1,
/// counterexample thm2, counterexample prop1, subgroups, automorphisms.
/// Groups are written as comma-separated moduli ("2,4" for Z(2) x Z(4));
/// JSON documents arrive inline (--json) or from a file (--input); --output
/// redirects the report to a file; --cap overrides enumeration caps.
CommandResult run_command(const std::vector<std::string>& args);

}  // namespace finabel
