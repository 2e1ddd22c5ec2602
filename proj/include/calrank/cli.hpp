#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace calrank {

// Exit status: 0 success, 2 usage error, 1 runtime error. The report goes to
// out (or --out); diagnostics go to err. args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace calrank
