#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "dirac/analysis.hpp"
#include "dirac/presets.hpp"
#include "dirac/stability.hpp"

namespace dirac {

/// Scenario selection: a named preset, or a fully spelled-out domain with
/// expression-based potential and initial data.
struct ScenarioConfig {
    std::string preset_name; // non-empty => preset
    ScenarioPreset custom;   // used when preset_name is empty

    /// Resolved view; ConfigError for unknown preset names.
    const ScenarioPreset& resolve() const;
};

struct SweepConfig {
    std::vector<double> eps;
    std::vector<double> h;   // spatial sweep (exclusive with tau)
    std::vector<double> tau; // temporal / eps-uniformity sweep
    double tau_e = 0.0;      // scheme step for spatial sweeps
    double h_e = 0.0;        // scheme grid for temporal sweeps
    ReferenceSettings reference; // TSFP reference fineness
};

/// Parsed, validated run configuration. `canonical_json` is the exact
/// serialized form used for hashing and for the manifest's embedded copy.
struct RunConfig {
    enum class Mode { Run, Sweep };
    Mode mode = Mode::Run;
    Method method = Method::EWI;
    ScenarioConfig scenario;

    // Single-run fields.
    double eps = 1.0;
    int grid_points = 0;
    double tau = 0.0;
    Horizon horizon;
    std::vector<double> snapshot_times;

    // Common.
    std::string output_dir = "out";
    bool override_stability = false;
    int jobs = 1;

    std::optional<SweepConfig> sweep;

    std::string canonical_json;
};

/// Parse and validate a JSON config document. Violations raise ConfigError
/// naming the offending field path (e.g. "config /sweep/tau_e: ...").
RunConfig parse_config(const std::string& json_text);

/// parse_config over a file's contents; ConfigError if unreadable.
RunConfig load_config_file(const std::filesystem::path& path);

} // namespace dirac
