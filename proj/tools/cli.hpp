#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace cfk::cli {

enum ExitCode : int { kPass = 0, kFail = 1, kInputError = 2, kCapExceeded = 3 };

/// Runs one invocation (args exclude the program name). The JSON report goes
/// to `out` unless --json is given; human-readable diagnostics go to `err`.
/// Relative paths are resolved against `base_dir`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const std::filesystem::path& base_dir = std::filesystem::current_path());

}  // namespace cfk::cli
