#pragma once
// Command-line front end. cli_run executes one invocation in-process and
// returns the exit code: 0 success, 1 verification mismatch or computation
// failure, 2 usage or input error, 3 resource cap.

#include <iosfwd>
#include <string>
#include <vector>

namespace gda {

int cli_run(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace gda
