#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "dirac/config.hpp"

namespace dirac {

/// Result of executing a config: a process-style exit code plus the artifacts
/// written. Exit codes: 0 success, 3 stability rejection. Configuration and
/// internal errors surface as exceptions (ConfigError and friends); callers
/// map those to their own codes.
struct RunOutcome {
    int exit_code = 0;
    std::filesystem::path output_dir;       ///< resolved output directory
    std::vector<std::string> files;         ///< file names written, relative to output_dir
    std::string message;                    ///< human-readable summary or rejection text
};

/// Execute a parsed config. Relative output directories are resolved against
/// `output_root`. All files are written atomically; the manifest is written
/// last so its presence marks a complete output set.
RunOutcome execute(const RunConfig& cfg, const std::filesystem::path& output_root);

/// Render the manifest JSON for an output set (exposed for tests).
std::string manifest_text(const RunConfig& cfg, const std::vector<std::string>& files,
                          const std::string& stability_note);

} // namespace dirac
