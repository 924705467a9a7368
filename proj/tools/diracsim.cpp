// diracsim: config-driven driver for the Dirac spectral solver library.
//
// Verbs:
//   run <config>       execute a single simulation (config mode "run")
//   sweep <config>     execute a convergence / uniformity sweep (mode "sweep")
//   presets            list built-in scenario presets
//   validate <config>  parse + validate a config and print its hash
//
// Relative output directories resolve against $DIRACSIM_OUTPUT_ROOT (or the
// working directory when unset). Exit codes: 0 success, 1 usage, 2 bad
// config, 3 stability rejection, 4 internal error.

#include <cstdlib>
#include <exception>
#include <filesystem>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "dirac/config.hpp"
#include "dirac/errors.hpp"
#include "dirac/io.hpp"
#include "dirac/presets.hpp"
#include "dirac/runner.hpp"
#include "dirac/version.hpp"

namespace {

std::filesystem::path output_root() {
    if (const char* root = std::getenv("DIRACSIM_OUTPUT_ROOT"); root && *root)
        return std::filesystem::path(root);
    return std::filesystem::current_path();
}

int execute_file(const std::string& path, dirac::RunConfig::Mode want) {
    try {
        dirac::RunConfig cfg = dirac::load_config_file(path);
        if (cfg.mode != want) {
            const bool is_run = cfg.mode == dirac::RunConfig::Mode::Run;
            std::cerr << "error: config declares mode \"" << (is_run ? "run" : "sweep")
                      << "\"; use the matching verb\n";
            return 2;
        }
        const dirac::RunOutcome outcome = dirac::execute(cfg, output_root());
        (outcome.exit_code == 0 ? std::cout : std::cerr) << outcome.message << "\n";
        return outcome.exit_code;
    } catch (const dirac::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 4;
    }
}

int list_presets() {
    std::size_t width = 0;
    for (const auto* p : dirac::all_presets()) width = std::max(width, p->name.size());
    for (const auto* p : dirac::all_presets())
        std::cout << p->name << std::string(width - p->name.size() + 2, ' ') << p->description
                  << "\n";
    return 0;
}

int validate_file(const std::string& path) {
    try {
        const dirac::RunConfig cfg = dirac::load_config_file(path);
        std::cout << "ok: mode "
                  << (cfg.mode == dirac::RunConfig::Mode::Run ? "run" : "sweep") << ", method "
                  << dirac::method_name(cfg.method) << ", config hash "
                  << dirac::fnv1a_hex(cfg.canonical_json) << "\n";
        return 0;
    } catch (const dirac::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"diracsim: spectral solver for long-time Dirac dynamics"};
    app.set_version_flag("--version", std::string(dirac::kVersion));
    app.require_subcommand(1);

    std::string run_path, sweep_path, validate_path;
    CLI::App* run = app.add_subcommand("run", "Execute a single simulation config");
    run->add_option("config", run_path, "JSON config file (mode \"run\")")
        ->required()
        ->check(CLI::ExistingFile);
    CLI::App* sweep = app.add_subcommand("sweep", "Execute a convergence/uniformity sweep");
    sweep->add_option("config", sweep_path, "JSON config file (mode \"sweep\")")
        ->required()
        ->check(CLI::ExistingFile);
    app.add_subcommand("presets", "List built-in scenario presets");
    CLI::App* validate = app.add_subcommand("validate", "Validate a config without running it");
    validate->add_option("config", validate_path, "JSON config file")
        ->required()
        ->check(CLI::ExistingFile);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // app.exit prints help/usage text; collapse CLI11's error codes to the
        // documented usage exit code (help/version requests stay 0).
        return app.exit(e) == 0 ? 0 : 1;
    }

    if (run->parsed()) return execute_file(run_path, dirac::RunConfig::Mode::Run);
    if (sweep->parsed()) return execute_file(sweep_path, dirac::RunConfig::Mode::Sweep);
    if (validate->parsed()) return validate_file(validate_path);
    return list_presets();
}
