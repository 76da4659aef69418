#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace metascen::cli {

// Exit codes: 0 success, 1 error, 2 usage, 3 reference-target or end-state
// mismatch under --strict.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace metascen::cli
