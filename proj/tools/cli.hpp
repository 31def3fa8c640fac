#pragma once

#include <string>
#include <vector>

namespace invpack::cli {

/// 0 positive result, 1 negative result, 2 usage or domain error, 3 invalid input file.
struct CommandOutcome {
    int exit_code = 0;
    std::string out;
    std::string err;
};

/// Runs one command; args excludes the program name.
[[nodiscard]] CommandOutcome run(const std::vector<std::string>& args);

}  // namespace invpack::cli
