#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace eds {

// Runs one command line (without the program name). Exit codes: 0 for a
// definitive report, 2 when some verdict is unknown, 1 on errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace eds
