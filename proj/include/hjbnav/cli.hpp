#pragma once

namespace hjbnav {

// Entry point for the command-line tool. Subcommands: solve, path, rollout,
// fk-check, analytic, scenarios. Returns the process exit code.
int run_cli(int argc, const char* const* argv);

}  // namespace hjbnav
