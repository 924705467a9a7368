// End-to-end smoke tests of the installed CLI binary (path injected by the
// build as DIRACSIM_BINARY). Each test shells out and checks exit codes and
// captured output.

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <sys/wait.h>

#include "doctest.h"

namespace fs = std::filesystem;

namespace {

struct CommandResult {
    int exit_code = -1;
    std::string output; // stdout + stderr interleaved
};

CommandResult run_command(const std::string& args) {
    const std::string cmd = std::string(DIRACSIM_BINARY) + " " + args + " 2>&1";
    std::array<char, 4096> buf{};
    CommandResult r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    while (std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe)) r.output.append(buf.data(), n);
    const int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

fs::path write_config(const std::string& name, const std::string& text) {
    const fs::path dir = fs::temp_directory_path() / "dirac_cli_test";
    fs::create_directories(dir);
    const fs::path p = dir / name;
    std::ofstream(p) << text;
    return p;
}

} // namespace

TEST_SUITE("cli") {

TEST_CASE("presets lists the built-in scenarios in stable order") {
    CommandResult a = run_command("presets");
    CHECK(a.exit_code == 0);
    CHECK(a.output.find("1d-convergence") != std::string::npos);
    CHECK(a.output.find("2d-honeycomb") != std::string::npos);
    CHECK(a.output.find("1d-convergence") < a.output.find("2d-honeycomb"));

    CommandResult b = run_command("presets");
    CHECK(a.output == b.output);
}

TEST_CASE("validate accepts a good config and reports its hash") {
    const fs::path cfg = write_config("good.json", R"({
      "mode": "run", "method": "tsfp",
      "scenario": {"preset": "1d-convergence"},
      "eps": 1.0, "grid_points": 16, "tau": 0.1, "horizon": {"t_final": 1.0}
    })");
    CommandResult r = run_command("validate " + cfg.string());
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("ok:") == 0);
    CHECK(r.output.find("config hash") != std::string::npos);
}

TEST_CASE("validate rejects a bad config with the field path, exit 2") {
    const fs::path cfg = write_config("bad.json", R"({
      "mode": "run", "method": "warp",
      "scenario": {"preset": "1d-convergence"},
      "eps": 1.0, "grid_points": 16, "tau": 0.1, "horizon": {"t_final": 1.0}
    })");
    CommandResult r = run_command("validate " + cfg.string());
    CHECK(r.exit_code == 2);
    CHECK(r.output.find("/method") != std::string::npos);
}

TEST_CASE("verb/mode mismatch is a usage error") {
    const fs::path cfg = write_config("runmode.json", R"({
      "mode": "run", "method": "tsfp",
      "scenario": {"preset": "1d-convergence"},
      "eps": 1.0, "grid_points": 16, "tau": 0.1, "horizon": {"t_final": 1.0}
    })");
    CommandResult r = run_command("sweep " + cfg.string());
    CHECK(r.exit_code == 2);
    CHECK(r.output.find("mode") != std::string::npos);
}

TEST_CASE("run executes end to end under DIRACSIM_OUTPUT_ROOT") {
    const fs::path root = fs::temp_directory_path() / "dirac_cli_test" / "rootdir";
    fs::remove_all(root);
    fs::create_directories(root);
    const fs::path cfg = write_config("tiny.json", R"({
      "mode": "run", "method": "ewi-fp",
      "scenario": {"preset": "1d-convergence"},
      "eps": 1.0, "grid_points": 16, "tau": 0.1, "horizon": {"t_final": 1.0},
      "snapshot_times": [1.0], "output_dir": "cli_out"
    })");

    const std::string cmd = "DIRACSIM_OUTPUT_ROOT=" + root.string() + " " +
                            std::string(DIRACSIM_BINARY) + " run " + cfg.string() + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string output;
    std::array<char, 4096> buf{};
    while (std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe)) output.append(buf.data(), n);
    const int status = pclose(pipe);
    CHECK(WIFEXITED(status));
    CHECK(WEXITSTATUS(status) == 0);
    CHECK(fs::exists(root / "cli_out" / "manifest.json"));
    CHECK(fs::exists(root / "cli_out" / "snapshot_000.dat"));
}

TEST_CASE("stability rejection exits 3 from the CLI") {
    const fs::path cfg = write_config("unstable.json", R"({
      "mode": "run", "method": "sewi-fp",
      "scenario": {"preset": "1d-convergence"},
      "eps": 1.0, "grid_points": 128, "tau": 0.2, "horizon": {"t_final": 1.0}
    })");
    CommandResult r = run_command("run " + cfg.string());
    CHECK(r.exit_code == 3);
    CHECK(r.output.find("must be below") != std::string::npos);
}

TEST_CASE("missing config file is a usage error from the parser") {
    CommandResult r = run_command("run /definitely/not/here.json");
    CHECK(r.exit_code == 1);
}

TEST_CASE("unknown verb is a usage error") {
    CommandResult r = run_command("frobnicate nothing.json");
    CHECK(r.exit_code == 1);
}

} // TEST_SUITE
