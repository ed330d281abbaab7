#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hahn {

/// Runs the command-line driver on already-split arguments (argv[0]
/// excluded). Returns the process exit code: 0 on success, 1 on a domain
/// error (structured JSON on err), 2 on a usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hahn
