#ifndef LECERT_TOOLS_CLI_HPP
#define LECERT_TOOLS_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace lecert::cli {

/// Runs the command line (args[0] is the program name). Exit codes: 0 ok or
/// EQUISINGULAR, 2 INCONCLUSIVE, 1 usage, I/O or parse error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}   // namespace lecert::cli

#endif
