#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace loopalg {

// Exit codes: 0 all good, 1 a verification case failed, 2 usage or parse
// errors (including the resource guard).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace loopalg
