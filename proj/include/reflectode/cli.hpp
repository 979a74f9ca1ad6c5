#pragma once

namespace reflectode::cli {

// Entry point for the command-line tool. Subcommands:
//   classify | green | solve | region | validate | nsolve
// Returns 0 on success, 2 on nonunique-problem, 1 on any other error.
// Errors are reported as single-line JSON objects on stderr.
int run(int argc, const char* const* argv);

} // namespace reflectode::cli
