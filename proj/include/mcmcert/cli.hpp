#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace mcmcert::cli {

enum ExitCode : int {
    kPass = 0,
    kFail = 1,
    kUsage = 2,
    kGenericity = 3,
};

/// Runs the mcmcert command line. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mcmcert::cli
