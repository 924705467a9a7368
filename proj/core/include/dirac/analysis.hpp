#pragma once

#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "dirac/presets.hpp"
#include "dirac/spinor_field.hpp"
#include "dirac/stability.hpp"

namespace dirac {

/// Discrete l2 error sqrt(h^d sum_j |num_j - ref(x_j)|^2). Both fields must
/// be in real space on the same grid, or the reference on a nested finer grid
/// (same bounds, point counts integer multiples per axis); reference values
/// are then read at the shared nodes. ConfigError on non-nested grids.
double l2_error(const SpinorField& numerical, const SpinorField& reference);

/// Final time of a run, either fixed or in the long-horizon t = T0/eps form.
struct Horizon {
    enum class Kind { FinalTime, OverEps };
    Kind kind = Kind::FinalTime;
    double value = 0.0;

    static Horizon final_time(double t) { return {Kind::FinalTime, t}; }
    static Horizon t0_over_eps(double t0) { return {Kind::OverEps, t0}; }

    /// ConfigError if OverEps and eps == 0, or the result is not positive.
    double resolve(double eps) const;
};

/// Target fineness of the TSFP reference solutions. h_e fixes the reference
/// grid; tau_e is a target step, rounded so the reference lands exactly on
/// the measurement time.
struct ReferenceSettings {
    double h_e = 0.0;
    double tau_e = 0.0;
};

struct SweepCell {
    Method method{};
    double eps = 0.0;
    int n_points = 0;  // grid points per axis
    double h = 0.0;    // spacing along axis 0
    double tau = 0.0;
    double t_final = 0.0; // actual measurement time (steps * tau)
    double error = 0.0;
    double wall_ms = 0.0;
    bool rejected = false;
    std::string reason; // gate message for rejected or warned cells
};

/// Least-squares slope of log(error) vs log(parameter). Points with error
/// below the 1e-12 roundoff floor are excluded; the fit is only valid with
/// >= 3 surviving points spanning >= 4x in parameter.
struct OrderFit {
    bool valid = false;
    double order = 0.0;
    double residual = 0.0; // rms of log-space residuals
    int points_used = 0;
};

OrderFit fit_order(std::span<const double> params, std::span<const double> errors);

struct ErrorReport {
    std::string axis; // "h" | "tau" | "eps"
    Method method{};
    Method reference_method = Method::TSFP;
    double reference_h = 0.0;
    double reference_tau = 0.0; // target tau_e of the references

    std::vector<SweepCell> cells; // eps-major, sweep-parameter-minor order

    struct EpsFit {
        double eps = 0.0;
        OrderFit fit;
    };
    std::vector<EpsFit> fits; // one order fit per eps (over the sweep axis)

    /// max over sweep parameters of (max/min error across eps); NaN when the
    /// sweep has a single eps or no comparable cells.
    double uniformity_ratio = std::nan("");
};

/// Spatial convergence study: for each (eps, h) run `method` at fixed small
/// tau_e up to horizon, measured against a shared per-eps TSFP reference on
/// the (finer, nested) reference grid. h values must map to even point
/// counts of the preset domain. jobs > 1 runs cells concurrently; results
/// are deterministic regardless.
ErrorReport spatial_sweep(Method method, const ScenarioPreset& preset,
                          const std::vector<double>& eps_list, const std::vector<double>& h_list,
                          double tau_e, Horizon horizon, ReferenceSettings ref, int jobs = 1,
                          bool override_stability = false);

/// Temporal convergence / eps-uniformity study: runs at fixed grid h_e over
/// the tau list; per-eps order fits and the cross-eps uniformity ratio are
/// filled in. Axis is "tau" with multiple tau values, "eps" otherwise.
ErrorReport temporal_sweep(Method method, const ScenarioPreset& preset,
                           const std::vector<double>& eps_list, const std::vector<double>& tau_list,
                           double h_e, Horizon horizon, double reference_tau_e, int jobs = 1,
                           bool override_stability = false);

/// Two-segment description of long-horizon error growth: errors grow roughly
/// linearly up to some t*, then exponentially. t* is operationalized as the
/// sample index minimizing the total squared residual of (linear fit before,
/// log-linear fit after), computed on max-normalized errors so the detection
/// is invariant under scaling all errors by a constant.
struct GrowthProfile {
    Method method{};
    double eps = 0.0, h = 0.0, tau = 0.0;
    std::vector<double> times;
    std::vector<double> errors;
    bool tstar_defined = false;
    double tstar = std::nan("");
    double linear_residual = std::nan(""); // rms, normalized-error space
    double exp_residual = std::nan("");
    std::string note; // reason when t* is undefined
};

/// Breakpoint detector behind GrowthProfile, exposed for direct testing.
struct BreakpointFit {
    bool defined = false;
    std::size_t index = 0;
    double tstar = std::nan("");
    double linear_residual = std::nan("");
    double exp_residual = std::nan("");
    std::string note;
};

BreakpointFit detect_breakpoint(std::span<const double> times, std::span<const double> errors);

/// Long-horizon error trajectory of `method` vs a lockstep TSFP reference on
/// the same grid with tau_ref = tau/ref_substeps (>= 10 enforced). Errors are
/// sampled every `sample_stride` steps (and at the final step).
GrowthProfile growth_profile(Method method, const ScenarioPreset& preset, double eps, double h,
                             double tau, double horizon, int sample_stride = 10,
                             int ref_substeps = 10, bool override_stability = false);

/// Pointwise density rho_j = |phi1_j|^2 + |phi2_j|^2 and its discrete mass
/// h^d sum_j rho_j. Real-space fields only.
struct DensityField {
    GridPtr grid;
    std::vector<double> rho;
    double mass = 0.0;
};

DensityField density(const SpinorField& real_field);

} // namespace dirac
