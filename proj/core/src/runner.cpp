#include "dirac/runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <utility>

#include <nlohmann/json.hpp>

#include "dirac/analysis.hpp"
#include "dirac/errors.hpp"
#include "dirac/io.hpp"
#include "dirac/steppers.hpp"
#include "dirac/version.hpp"

namespace dirac {

namespace {

namespace fs = std::filesystem;

std::string snapshot_name(std::size_t index) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "snapshot_%03zu.dat", index);
    return buf;
}

long steps_on_grid(double t, double tau, long max_steps, const char* what) {
    const long k = std::lround(t / tau);
    if (k < 0 || k > max_steps || std::abs(static_cast<double>(k) * tau - t) >
                                      1e-9 * std::max(1.0, std::abs(t)))
        throw ConfigError("config /" + std::string(what) + ": t = " + format_number(t) +
                          " does not lie on the time grid (tau = " + format_number(tau) +
                          ", horizon = " + format_number(static_cast<double>(max_steps) * tau) +
                          ")");
    return k;
}

RunOutcome execute_run(const RunConfig& cfg, const fs::path& dir) {
    const ScenarioPreset& preset = cfg.scenario.resolve();
    GridPtr grid = preset.make_grid(cfg.grid_points);
    PotentialSpec pot = preset.make_potential(cfg.eps);

    const double t_final = cfg.horizon.resolve(cfg.eps);
    const long steps = std::max<long>(1, std::lround(t_final / cfg.tau));
    if (std::abs(static_cast<double>(steps) * cfg.tau - t_final) > 1e-9 * t_final)
        throw ConfigError("config /tau: " + format_number(cfg.tau) +
                          " does not divide the horizon " + format_number(t_final));

    const double c_sum = potential_sup_sum(pot, *grid, t_final);
    const GateResult gate = stability_gate(cfg.method, cfg.tau, *grid, c_sum);
    std::string note;
    if (gate.status == GateResult::Status::Rejected) {
        if (!cfg.override_stability) return {3, dir, {}, gate.message};
        note = "stability gate overridden: " + gate.message;
    } else if (gate.status == GateResult::Status::Warning) {
        note = gate.message;
    }

    // Snapshot times -> step indices, validated before any work happens.
    std::vector<std::pair<long, std::size_t>> snaps; // (step, file index)
    for (std::size_t i = 0; i < cfg.snapshot_times.size(); ++i)
        snaps.emplace_back(steps_on_grid(cfg.snapshot_times[i], cfg.tau, steps, "snapshot_times"),
                           i);
    std::sort(snaps.begin(), snaps.end());

    Stepper stepper(cfg.method, grid, pot, cfg.tau);
    stepper.initialize(preset.make_initial(grid));

    std::vector<std::string> files;
    std::string observables = "t,mass\n";
    std::size_t next_snap = 0;
    for (long k = 0;; ++k) {
        const bool snap_here = next_snap < snaps.size() && snaps[next_snap].first == k;
        if (snap_here || k == 0 || k == steps) {
            const SpinorField real = stepper.solution_real();
            const DensityField rho = density(real);
            const double t = stepper.time();
            observables += format_number(t) + "," + format_number(rho.mass) + "\n";
            while (next_snap < snaps.size() && snaps[next_snap].first == k) {
                const std::string name = snapshot_name(snaps[next_snap].second);
                atomic_write_text(dir / name, density_snapshot_text(rho, t));
                files.push_back(name);
                ++next_snap;
            }
        }
        if (k == steps) break;
        stepper.step();
    }

    atomic_write_text(dir / "observables.csv", observables);
    files.push_back("observables.csv");
    std::sort(files.begin(), files.end());

    atomic_write_text(dir / "manifest.json", manifest_text(cfg, files, note));
    files.push_back("manifest.json");

    std::string message = "run complete: " + method_name(cfg.method) +
                          ", t_final = " + format_number(t_final) + ", " + std::to_string(steps) +
                          " steps, outputs in " + dir.string();
    if (!note.empty()) message += "\n" + note;
    return {0, dir, std::move(files), std::move(message)};
}

RunOutcome execute_sweep(const RunConfig& cfg, const fs::path& dir) {
    const SweepConfig& sw = *cfg.sweep;
    const ScenarioPreset& preset = cfg.scenario.resolve();

    ErrorReport report;
    if (!sw.h.empty())
        report = spatial_sweep(cfg.method, preset, sw.eps, sw.h, sw.tau_e, cfg.horizon,
                               sw.reference, cfg.jobs, cfg.override_stability);
    else
        report = temporal_sweep(cfg.method, preset, sw.eps, sw.tau, sw.h_e, cfg.horizon,
                                sw.reference.tau_e, cfg.jobs, cfg.override_stability);

    std::size_t rejected = 0;
    std::string first_reason;
    for (const SweepCell& cell : report.cells)
        if (cell.rejected) {
            if (first_reason.empty()) first_reason = cell.reason;
            ++rejected;
        }
    if (!report.cells.empty() && rejected == report.cells.size())
        return {3, dir, {}, "all sweep cells rejected by the stability gate: " + first_reason};

    std::vector<std::string> files;
    atomic_write_text(dir / "cells.csv", report_csv(report));
    files.push_back("cells.csv");
    atomic_write_text(dir / "fits.csv", fits_csv(report));
    files.push_back("fits.csv");

    atomic_write_text(dir / "manifest.json", manifest_text(cfg, files, ""));
    files.push_back("manifest.json");

    std::string message = "sweep complete: " + method_name(cfg.method) + " over " + report.axis +
                          ", " + std::to_string(report.cells.size()) + " cells";
    if (rejected > 0)
        message += " (" + std::to_string(rejected) + " rejected: " + first_reason + ")";
    if (std::isfinite(report.uniformity_ratio))
        message += ", uniformity ratio " + format_number(report.uniformity_ratio);
    message += ", outputs in " + dir.string();
    return {0, dir, std::move(files), std::move(message)};
}

} // namespace

std::string manifest_text(const RunConfig& cfg, const std::vector<std::string>& files,
                          const std::string& stability_note) {
    nlohmann::json m;
    m["tool"] = "diracsim";
    m["version"] = kVersion;
    m["mode"] = cfg.mode == RunConfig::Mode::Run ? "run" : "sweep";
    m["method"] = method_name(cfg.method);
    m["config_hash"] = fnv1a_hex(cfg.canonical_json);
    m["config"] = nlohmann::json::parse(cfg.canonical_json);
    m["outputs"] = files;
    if (!stability_note.empty()) m["stability_note"] = stability_note;
    return m.dump(2) + "\n";
}

RunOutcome execute(const RunConfig& cfg, const fs::path& output_root) {
    fs::path dir = cfg.output_dir;
    if (dir.is_relative()) dir = output_root / dir;
    if (cfg.mode == RunConfig::Mode::Run) return execute_run(cfg, dir);
    return execute_sweep(cfg, dir);
}

} // namespace dirac
