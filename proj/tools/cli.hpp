#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace bqsos::cli {

// Runs one command line (without the program name). Data goes to out,
// diagnostics to err. Returns 0 on success, 1 on a computation error and
// 2 on a usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bqsos::cli
