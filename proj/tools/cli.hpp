#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace dtop::cli {

// Exit codes: 0 computed (whatever the answer), 1 input error, 2 usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dtop::cli
