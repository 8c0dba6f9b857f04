#pragma once

namespace reallot {

// Command-line front end. Subcommands: solve, trace, audit, manipulate,
// witness, replay. Every report ends with `RESULT pass|violation|error`.
// Exit codes: 0 pass, 1 violation or replay mismatch, 2 usage, parse, or
// domain errors.
int run_cli(int argc, const char* const* argv);

}  // namespace reallot
