#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ccb {

// exit codes: 0 success/verified, 1 verification failure, 2 usage error,
// 3 search exhaustion
int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ccb
