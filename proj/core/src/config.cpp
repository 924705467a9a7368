#include "dirac/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "dirac/errors.hpp"
#include "dirac/expression.hpp"

namespace dirac {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw ConfigError("config " + path + ": " + what);
}

const json& require(const json& obj, const std::string& path, const char* key) {
    const auto it = obj.find(key);
    if (it == obj.end()) fail(path + "/" + key, "missing required field");
    return *it;
}

double number_at(const json& obj, const std::string& path, const char* key) {
    const json& v = require(obj, path, key);
    if (!v.is_number()) fail(path + "/" + key, "must be a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) fail(path + "/" + key, "must be finite");
    return d;
}

double positive_at(const json& obj, const std::string& path, const char* key) {
    const double d = number_at(obj, path, key);
    if (!(d > 0.0)) fail(path + "/" + key, "must be positive");
    return d;
}

std::string string_at(const json& obj, const std::string& path, const char* key) {
    const json& v = require(obj, path, key);
    if (!v.is_string()) fail(path + "/" + key, "must be a string");
    return v.get<std::string>();
}

std::string string_or(const json& obj, const char* key, const std::string& fallback,
                      const std::string& path) {
    const auto it = obj.find(key);
    if (it == obj.end()) return fallback;
    if (!it->is_string()) fail(path + "/" + key, "must be a string");
    return it->get<std::string>();
}

std::vector<double> positive_list_at(const json& obj, const std::string& path, const char* key) {
    const json& v = require(obj, path, key);
    if (!v.is_array() || v.empty()) fail(path + "/" + key, "must be a nonempty array of numbers");
    std::vector<double> out;
    for (const auto& e : v) {
        if (!e.is_number()) fail(path + "/" + key, "must contain only numbers");
        const double d = e.get<double>();
        if (!(d > 0.0) || !std::isfinite(d)) fail(path + "/" + key, "entries must be positive");
        out.push_back(d);
    }
    return out;
}

void reject_unknown_keys(const json& obj, const std::string& path,
                         const std::set<std::string>& allowed) {
    for (const auto& [key, value] : obj.items())
        if (!allowed.contains(key)) fail(path + "/" + key, "unknown field");
}

Expression parse_expr_field(const std::string& text, const std::string& path, int dim,
                            bool allow_t) {
    try {
        Expression e = Expression::parse(text);
        if (dim == 1 && e.uses_y()) fail(path, "variable 'y' is not available in 1D");
        if (!allow_t && e.uses_t()) fail(path, "variable 't' is not available in initial data");
        return e;
    } catch (const ConfigError& err) {
        throw ConfigError("config " + path + ": " + err.what());
    }
}

ScenarioConfig parse_scenario(const json& v, const std::string& path) {
    if (!v.is_object()) fail(path, "must be an object");
    ScenarioConfig sc;

    if (v.contains("preset")) {
        reject_unknown_keys(v, path, {"preset"});
        sc.preset_name = string_at(v, path, "preset");
        if (!find_preset(sc.preset_name))
            fail(path + "/preset", "unknown preset '" + sc.preset_name + "'");
        return sc;
    }

    reject_unknown_keys(v, path,
                        {"dim", "bounds", "V", "A1", "A2", "phi1_re", "phi1_im", "phi2_re",
                         "phi2_im", "eps_defaults"});
    ScenarioPreset p;
    p.name = "custom";
    const json& dim_v = require(v, path, "dim");
    if (!dim_v.is_number_integer()) fail(path + "/dim", "must be 1 or 2");
    p.dim = dim_v.get<int>();
    if (p.dim != 1 && p.dim != 2) fail(path + "/dim", "must be 1 or 2");

    const json& b = require(v, path, "bounds");
    const std::size_t need = p.dim == 1 ? 2 : 4;
    if (!b.is_array() || b.size() != need)
        fail(path + "/bounds",
             p.dim == 1 ? "must be [x0, x1]" : "must be [x0, x1, y0, y1]");
    std::vector<double> bounds;
    for (const auto& e : b) {
        if (!e.is_number()) fail(path + "/bounds", "must contain only numbers");
        bounds.push_back(e.get<double>());
    }
    p.lower[0] = bounds[0];
    p.upper[0] = bounds[1];
    if (p.dim == 2) {
        p.lower[1] = bounds[2];
        p.upper[1] = bounds[3];
    }
    for (int axis = 0; axis < p.dim; ++axis)
        if (!(p.lower[axis] < p.upper[axis]) || !std::isfinite(p.lower[axis]) ||
            !std::isfinite(p.upper[axis]))
            fail(path + "/bounds", "each axis needs finite bounds with lo < hi");

    p.v_text = string_or(v, "V", "", path);
    p.a1_text = string_or(v, "A1", "", path);
    p.a2_text = string_or(v, "A2", "", path);
    if (p.dim == 1 && !p.a2_text.empty()) fail(path + "/A2", "not available in 1D");
    p.phi1_re = string_or(v, "phi1_re", "0", path);
    p.phi1_im = string_or(v, "phi1_im", "0", path);
    p.phi2_re = string_or(v, "phi2_re", "0", path);
    p.phi2_im = string_or(v, "phi2_im", "0", path);

    // Compile everything now so malformed expressions fail with a field path.
    for (const auto& [key, text] :
         std::initializer_list<std::pair<const char*, const std::string*>>{
             {"V", &p.v_text}, {"A1", &p.a1_text}, {"A2", &p.a2_text}}) {
        if (!text->empty()) parse_expr_field(*text, path + "/" + key, p.dim, /*allow_t=*/true);
    }
    for (const auto& [key, text] :
         std::initializer_list<std::pair<const char*, const std::string*>>{
             {"phi1_re", &p.phi1_re},
             {"phi1_im", &p.phi1_im},
             {"phi2_re", &p.phi2_re},
             {"phi2_im", &p.phi2_im}}) {
        parse_expr_field(*text, path + "/" + key, p.dim, /*allow_t=*/false);
    }

    if (v.contains("eps_defaults")) p.default_eps = positive_list_at(v, path, "eps_defaults");

    sc.custom = std::move(p);
    return sc;
}

Horizon parse_horizon(const json& v, const std::string& path) {
    if (!v.is_object()) fail(path, "must be an object with t_final or t0_over_eps");
    reject_unknown_keys(v, path, {"t_final", "t0_over_eps"});
    const bool has_fixed = v.contains("t_final");
    const bool has_scaled = v.contains("t0_over_eps");
    if (has_fixed == has_scaled)
        fail(path, "exactly one of t_final / t0_over_eps is required");
    if (has_fixed) return Horizon::final_time(positive_at(v, path, "t_final"));
    return Horizon::t0_over_eps(positive_at(v, path, "t0_over_eps"));
}

SweepConfig parse_sweep(const json& v, const std::string& path) {
    if (!v.is_object()) fail(path, "must be an object");
    reject_unknown_keys(v, path, {"eps", "h", "tau", "tau_e", "h_e", "reference"});

    SweepConfig sw;
    sw.eps = positive_list_at(v, path, "eps");
    for (double e : sw.eps)
        if (e > 1.0) fail(path + "/eps", "entries must lie in (0, 1]");

    const bool has_h = v.contains("h");
    const bool has_tau = v.contains("tau");
    if (has_h == has_tau) fail(path, "exactly one of h / tau lists is required");

    if (has_h) {
        sw.h = positive_list_at(v, path, "h");
        sw.tau_e = positive_at(v, path, "tau_e");
    } else {
        sw.tau = positive_list_at(v, path, "tau");
        sw.h_e = positive_at(v, path, "h_e");
    }

    const json& ref = require(v, path, "reference");
    if (!ref.is_object()) fail(path + "/reference", "must be an object");
    reject_unknown_keys(ref, path + "/reference", {"h_e", "tau_e"});
    sw.reference.h_e = positive_at(ref, path + "/reference", "h_e");
    sw.reference.tau_e = positive_at(ref, path + "/reference", "tau_e");
    return sw;
}

} // namespace

const ScenarioPreset& ScenarioConfig::resolve() const {
    if (!preset_name.empty()) {
        const ScenarioPreset* p = find_preset(preset_name);
        if (!p) throw ConfigError("unknown preset '" + preset_name + "'");
        return *p;
    }
    return custom;
}

RunConfig parse_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config /: top level must be an object");

    RunConfig cfg;
    const std::string root;

    const std::string mode = string_at(j, root, "mode");
    if (mode == "run")
        cfg.mode = RunConfig::Mode::Run;
    else if (mode == "sweep")
        cfg.mode = RunConfig::Mode::Sweep;
    else
        fail("/mode", "must be \"run\" or \"sweep\"");

    try {
        cfg.method = method_from_name(string_at(j, root, "method"));
    } catch (const ConfigError& e) {
        throw ConfigError(std::string("config /method: ") + e.what());
    }

    cfg.scenario = parse_scenario(require(j, root, "scenario"), "/scenario");

    static const std::set<std::string> common = {"mode",       "method",            "scenario",
                                                 "output_dir", "override_stability", "jobs"};

    if (cfg.mode == RunConfig::Mode::Run) {
        std::set<std::string> allowed = common;
        allowed.insert({"eps", "grid_points", "tau", "horizon", "snapshot_times"});
        reject_unknown_keys(j, root, allowed);

        cfg.eps = number_at(j, root, "eps");
        if (!(cfg.eps >= 0.0 && cfg.eps <= 1.0)) fail("/eps", "must lie in [0, 1]");

        const json& np = require(j, root, "grid_points");
        if (!np.is_number_integer()) fail("/grid_points", "must be an integer");
        cfg.grid_points = np.get<int>();
        if (cfg.grid_points < 4 || cfg.grid_points % 2 != 0)
            fail("/grid_points", "must be an even integer >= 4");

        cfg.tau = positive_at(j, root, "tau");
        cfg.horizon = parse_horizon(require(j, root, "horizon"), "/horizon");

        if (j.contains("snapshot_times")) {
            const json& st = j["snapshot_times"];
            if (!st.is_array()) fail("/snapshot_times", "must be an array of times");
            for (const auto& e : st) {
                if (!e.is_number()) fail("/snapshot_times", "must contain only numbers");
                const double t = e.get<double>();
                if (!(t >= 0.0) || !std::isfinite(t))
                    fail("/snapshot_times", "times must be >= 0");
                cfg.snapshot_times.push_back(t);
            }
        }
    } else {
        std::set<std::string> allowed = common;
        allowed.insert({"horizon", "sweep"});
        reject_unknown_keys(j, root, allowed);
        cfg.horizon = parse_horizon(require(j, root, "horizon"), "/horizon");
        cfg.sweep = parse_sweep(require(j, root, "sweep"), "/sweep");
    }

    cfg.output_dir = string_or(j, "output_dir", "out", root);
    if (cfg.output_dir.empty()) fail("/output_dir", "must not be empty");

    if (j.contains("override_stability")) {
        if (!j["override_stability"].is_boolean())
            fail("/override_stability", "must be a boolean");
        cfg.override_stability = j["override_stability"].get<bool>();
    }
    if (j.contains("jobs")) {
        if (!j["jobs"].is_number_integer()) fail("/jobs", "must be an integer");
        cfg.jobs = j["jobs"].get<int>();
        if (cfg.jobs < 1 || cfg.jobs > 256) fail("/jobs", "must lie in [1, 256]");
    }

    cfg.canonical_json = j.dump(2);
    return cfg;
}

RunConfig load_config_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read config file '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

} // namespace dirac
