#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace coclust::cli {

// Runs one CLI command (register, visit, query, ingest, cluster, trace).
// `args` excludes the program name. Returns the process exit code: 0 on
// success, 1 for module errors (one-line diagnostic on `err`), 2 for usage
// errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace coclust::cli
