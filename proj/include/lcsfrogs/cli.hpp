#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lcsfrogs::cli {

// args excludes the program name. Exit codes: 0 ok, 1 computation error,
// 2 usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lcsfrogs::cli
