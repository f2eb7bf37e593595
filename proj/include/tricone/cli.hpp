#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tricone {

// Command-line front end. Subcommands: decide, canonicalize, monodromy, area,
// cone-check, rational, catalan, membrane. Flags: --tol, --seed, --out,
// --format json|svg|text. The default tolerance can also come from the
// TRICONE_TOL environment variable.
//
// Exit status: 0 success, 2 usage error, 3 numeric failure.
int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err);

} // namespace tricone
