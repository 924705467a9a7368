#include "dirac/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <functional>
#include <limits>
#include <mutex>
#include <thread>

#include "dirac/errors.hpp"
#include "dirac/steppers.hpp"

namespace dirac {

namespace {

// Reference grid nodes must contain the coarse nodes: same bounds, point
// count an integer multiple per axis. Returns the per-axis stride.
std::array<int, 2> nesting_strides(const Grid& coarse, const Grid& fine) {
    if (coarse.dim() != fine.dim())
        throw ConfigError("l2_error: dimension mismatch between fields");
    std::array<int, 2> stride{1, 1};
    for (int axis = 0; axis < coarse.dim(); ++axis) {
        if (coarse.lower(axis) != fine.lower(axis) || coarse.upper(axis) != fine.upper(axis))
            throw ConfigError("l2_error: grids cover different domains");
        if (fine.points(axis) % coarse.points(axis) != 0)
            throw ConfigError("l2_error: grids are not nested (reference point count must be "
                              "an integer multiple of the numerical one)");
        stride[axis] = fine.points(axis) / coarse.points(axis);
    }
    return stride;
}

} // namespace

double l2_error(const SpinorField& numerical, const SpinorField& reference) {
    if (numerical.space() != Space::Real || reference.space() != Space::Real)
        throw ContractViolation("l2_error: both fields must be in real space");

    const Grid& g = numerical.grid();
    const Grid& gr = reference.grid();

    if (g == gr) return l2_distance(numerical, reference);

    const auto stride = nesting_strides(g, gr);
    const int n1 = g.points(0);
    const int n2 = g.dim() == 2 ? g.points(1) : 1;
    long double acc = 0.0L;
    for (int iy = 0; iy < n2; ++iy) {
        for (int ix = 0; ix < n1; ++ix) {
            const std::size_t j = g.index(ix, iy);
            const std::size_t jr = gr.index(ix * stride[0], iy * stride[1]);
            const Spinor d = numerical.at(j) - reference.at(jr);
            acc += static_cast<long double>(d.norm2());
        }
    }
    return static_cast<double>(std::sqrt(static_cast<long double>(g.cell_volume()) * acc));
}

double Horizon::resolve(double eps) const {
    double t = value;
    if (kind == Kind::OverEps) {
        if (eps == 0.0) throw ConfigError("horizon: t0_over_eps form requires eps > 0");
        t = value / eps;
    }
    if (!(t > 0.0) || !std::isfinite(t))
        throw ConfigError("horizon: final time must be positive and finite");
    return t;
}

OrderFit fit_order(std::span<const double> params, std::span<const double> errors) {
    if (params.size() != errors.size())
        throw ContractViolation("fit_order: parameter/error length mismatch");

    constexpr double kFloor = 1e-12;
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < params.size(); ++i) {
        if (!(params[i] > 0.0)) throw ContractViolation("fit_order: parameters must be positive");
        if (errors[i] < 0.0) throw ContractViolation("fit_order: negative error");
        if (errors[i] < kFloor) continue; // roundoff-floor points corrupt slopes
        lx.push_back(std::log(params[i]));
        ly.push_back(std::log(errors[i]));
    }

    OrderFit fit;
    fit.points_used = static_cast<int>(lx.size());
    if (lx.size() < 3) return fit;
    const auto [lo, hi] = std::minmax_element(lx.begin(), lx.end());
    if (*hi - *lo < std::log(4.0) - 1e-12) return fit; // span < 4x in parameter

    const double n = static_cast<double>(lx.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sx += lx[i];
        sy += ly[i];
        sxx += lx[i] * lx[i];
        sxy += lx[i] * ly[i];
    }
    const double denom = n * sxx - sx * sx;
    const double slope = (n * sxy - sx * sy) / denom;
    const double intercept = (sy - slope * sx) / n;

    double ssr = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        const double r = ly[i] - (intercept + slope * lx[i]);
        ssr += r * r;
    }
    fit.valid = true;
    fit.order = slope;
    fit.residual = std::sqrt(ssr / n);
    return fit;
}

namespace {

void parallel_for(std::size_t count, int jobs, const std::function<void(std::size_t)>& body) {
    if (jobs <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    const int workers = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(jobs), count));
    std::atomic<std::size_t> next{0};
    std::mutex err_mutex;
    std::exception_ptr first_error;
    auto worker = [&] {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count) return;
            try {
                body(i);
            } catch (...) {
                std::lock_guard lock(err_mutex);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

// h -> even point count of the preset domain; rejects h that does not divide
// the domain into a whole even number of cells.
int points_for_spacing(const ScenarioPreset& preset, double h) {
    const double length = preset.upper[0] - preset.lower[0];
    if (!(h > 0.0)) throw ConfigError("mesh size h must be positive");
    const double ratio = length / h;
    const int n = static_cast<int>(std::llround(ratio));
    if (n < 4 || std::abs(ratio - n) > 1e-9 * ratio)
        throw ConfigError("mesh size h must divide the domain into >= 4 uniform cells");
    if (n % 2 != 0) throw ConfigError("mesh size h must yield an even point count");
    return n;
}

long steps_for(double t_final, double tau) {
    const long steps = std::max<long>(1, std::llround(t_final / tau));
    return steps;
}

// Per-eps TSFP reference at the exact measurement time: tau is derived from
// the target so the last step lands on t_final.
SpinorField tsfp_reference(const ScenarioPreset& preset, double eps, const GridPtr& grid,
                           double t_final, double tau_e_target) {
    const long m = std::max<long>(1, std::llround(t_final / tau_e_target));
    const double tau_ref = t_final / static_cast<double>(m);
    Stepper ref(Method::TSFP, grid, preset.make_potential(eps), tau_ref);
    ref.initialize(preset.make_initial(grid));
    ref.advance(m);
    return ref.solution_real();
}

struct CellJob {
    double eps = 0.0;
    int n = 0;
    double tau = 0.0;
    double t_final = 0.0;        // requested horizon
    const SpinorField* ref = nullptr; // real-space reference on a nested grid
};

SweepCell run_cell(Method method, const ScenarioPreset& preset, const CellJob& job,
                   bool override_stability) {
    SweepCell cell;
    cell.method = method;
    cell.eps = job.eps;
    cell.n_points = job.n;
    cell.tau = job.tau;

    const GridPtr grid = preset.make_grid(job.n);
    cell.h = grid->spacing(0);
    const PotentialSpec pot = preset.make_potential(job.eps);

    const long steps = steps_for(job.t_final, job.tau);
    cell.t_final = static_cast<double>(steps) * job.tau;

    const double c_sum = potential_sup_sum(pot, *grid, cell.t_final);
    const GateResult gate = stability_gate(method, job.tau, *grid, c_sum);
    if (!gate.ok() && !override_stability) {
        cell.rejected = true;
        cell.reason = gate.message;
        return cell;
    }
    cell.reason = gate.message; // warning text (if any) travels with the cell

    const auto t0 = std::chrono::steady_clock::now();
    Stepper stepper(method, grid, pot, job.tau);
    stepper.initialize(preset.make_initial(grid));
    stepper.advance(steps);
    SpinorField solution = stepper.solution_real();
    const auto t1 = std::chrono::steady_clock::now();
    cell.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();

    cell.error = l2_error(solution, *job.ref);
    return cell;
}

// Shared sweep driver: references are computed once per (eps, t_final) pair
// and shared read-only across cells; cells then run as independent jobs.
ErrorReport run_sweep(Method method, const ScenarioPreset& preset,
                      const std::vector<double>& eps_list, const std::vector<double>& param_list,
                      bool param_is_h, double fixed_tau, int fixed_n, Horizon horizon,
                      double ref_h, double ref_tau_target, int jobs, bool override_stability) {
    if (eps_list.empty()) throw ConfigError("sweep: eps list must not be empty");
    if (param_list.empty()) throw ConfigError("sweep: sweep parameter list must not be empty");

    ErrorReport report;
    report.axis = param_is_h ? "h" : (param_list.size() > 1 ? "tau" : "eps");
    report.method = method;
    report.reference_h = ref_h;
    report.reference_tau = ref_tau_target;

    const int ref_n = points_for_spacing(preset, ref_h);
    const GridPtr ref_grid = preset.make_grid(ref_n);

    // One reference per eps (all cells of one eps share the measurement time;
    // tau values that do not divide the horizon shift t_final per cell, which
    // is validated below to keep cells comparable to their reference).
    std::vector<double> t_final(eps_list.size());
    std::vector<SpinorField> refs;
    refs.reserve(eps_list.size());
    for (std::size_t e = 0; e < eps_list.size(); ++e) {
        const double t = horizon.resolve(eps_list[e]);
        for (double p : param_list) {
            const double tau = param_is_h ? fixed_tau : p;
            const double landed = static_cast<double>(steps_for(t, tau)) * tau;
            if (std::abs(landed - t) > 1e-9 * std::max(1.0, std::abs(t)))
                throw ConfigError("sweep: tau does not divide the horizon; the measurement "
                                  "time would drift from the reference");
        }
        t_final[e] = t;
    }
    {
        std::vector<SpinorField> tmp(eps_list.size(), SpinorField(ref_grid, Space::Real));
        parallel_for(eps_list.size(), jobs, [&](std::size_t e) {
            tmp[e] = tsfp_reference(preset, eps_list[e], ref_grid, t_final[e], ref_tau_target);
        });
        refs = std::move(tmp);
    }

    std::vector<CellJob> jobs_list;
    for (std::size_t e = 0; e < eps_list.size(); ++e) {
        for (double p : param_list) {
            CellJob job;
            job.eps = eps_list[e];
            job.n = param_is_h ? points_for_spacing(preset, p) : fixed_n;
            job.tau = param_is_h ? fixed_tau : p;
            job.t_final = t_final[e];
            job.ref = &refs[e];
            jobs_list.push_back(job);
        }
    }

    std::vector<SweepCell> cells(jobs_list.size());
    parallel_for(jobs_list.size(), jobs, [&](std::size_t i) {
        cells[i] = run_cell(method, preset, jobs_list[i], override_stability);
    });
    report.cells = std::move(cells);

    // Per-eps order fits over the sweep axis.
    const std::size_t per_eps = param_list.size();
    for (std::size_t e = 0; e < eps_list.size(); ++e) {
        std::vector<double> px, py;
        for (std::size_t k = 0; k < per_eps; ++k) {
            const SweepCell& c = report.cells[e * per_eps + k];
            if (c.rejected) continue;
            px.push_back(param_is_h ? c.h : c.tau);
            py.push_back(c.error);
        }
        report.fits.push_back({eps_list[e], fit_order(px, py)});
    }

    // Uniformity across eps at each fixed sweep parameter.
    if (eps_list.size() > 1) {
        double worst = std::nan("");
        for (std::size_t k = 0; k < per_eps; ++k) {
            double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
            int n_ok = 0;
            for (std::size_t e = 0; e < eps_list.size(); ++e) {
                const SweepCell& c = report.cells[e * per_eps + k];
                if (c.rejected) continue;
                lo = std::min(lo, c.error);
                hi = std::max(hi, c.error);
                ++n_ok;
            }
            if (n_ok >= 2 && lo > 0.0) {
                const double ratio = hi / lo;
                worst = std::isnan(worst) ? ratio : std::max(worst, ratio);
            }
        }
        report.uniformity_ratio = worst;
    }
    return report;
}

} // namespace

ErrorReport spatial_sweep(Method method, const ScenarioPreset& preset,
                          const std::vector<double>& eps_list, const std::vector<double>& h_list,
                          double tau_e, Horizon horizon, ReferenceSettings ref, int jobs,
                          bool override_stability) {
    if (!(tau_e > 0.0)) throw ConfigError("spatial_sweep: tau_e must be positive");
    if (!(ref.h_e > 0.0) || !(ref.tau_e > 0.0))
        throw ConfigError("spatial_sweep: reference settings must be positive");
    return run_sweep(method, preset, eps_list, h_list, /*param_is_h=*/true, tau_e, 0, horizon,
                     ref.h_e, ref.tau_e, jobs, override_stability);
}

ErrorReport temporal_sweep(Method method, const ScenarioPreset& preset,
                           const std::vector<double>& eps_list, const std::vector<double>& tau_list,
                           double h_e, Horizon horizon, double reference_tau_e, int jobs,
                           bool override_stability) {
    if (!(h_e > 0.0)) throw ConfigError("temporal_sweep: h_e must be positive");
    if (!(reference_tau_e > 0.0))
        throw ConfigError("temporal_sweep: reference tau_e must be positive");
    const int n_e = points_for_spacing(preset, h_e);
    return run_sweep(method, preset, eps_list, tau_list, /*param_is_h=*/false, 0.0, n_e, horizon,
                     h_e, reference_tau_e, jobs, override_stability);
}

BreakpointFit detect_breakpoint(std::span<const double> times, std::span<const double> errors) {
    if (times.size() != errors.size())
        throw ContractViolation("detect_breakpoint: times/errors length mismatch");

    BreakpointFit out;
    const std::size_t m = times.size();
    constexpr std::size_t kMinSeg = 3; // points per segment for a meaningful line
    if (m < 2 * kMinSeg) {
        out.note = "too few samples for a two-segment fit";
        return out;
    }

    double peak = 0.0;
    for (double e : errors) {
        if (e < 0.0) throw ContractViolation("detect_breakpoint: negative error");
        peak = std::max(peak, e);
    }
    if (peak < 1e-12) {
        out.note = "errors at roundoff floor; t* undefined";
        return out;
    }

    // Max-normalized errors make the residual comparison scale-invariant.
    std::vector<double> u(m);
    for (std::size_t i = 0; i < m; ++i) u[i] = errors[i] / peak;
    constexpr double kLogFloor = 1e-16; // guards log of exact zeros
    std::vector<double> lu(m);
    for (std::size_t i = 0; i < m; ++i) lu[i] = std::log(std::max(u[i], kLogFloor));

    auto line_fit = [](std::span<const double> xs, std::span<const double> ys, std::size_t lo,
                       std::size_t hi, double& a, double& b) {
        // Least squares y ~ a + b*x over [lo, hi].
        const double n = static_cast<double>(hi - lo + 1);
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (std::size_t i = lo; i <= hi; ++i) {
            sx += xs[i];
            sy += ys[i];
            sxx += xs[i] * xs[i];
            sxy += xs[i] * ys[i];
        }
        const double denom = n * sxx - sx * sx;
        b = denom != 0.0 ? (n * sxy - sx * sy) / denom : 0.0;
        a = (sy - b * sx) / n;
    };

    double best_total = std::numeric_limits<double>::infinity();
    std::size_t best_k = 0;
    double best_lin_rms = 0, best_exp_rms = 0;

    for (std::size_t k = kMinSeg - 1; k + kMinSeg <= m; ++k) {
        double a1, b1;
        line_fit(times, u, 0, k, a1, b1);
        double ssr1 = 0;
        for (std::size_t i = 0; i <= k; ++i) {
            const double r = u[i] - (a1 + b1 * times[i]);
            ssr1 += r * r;
        }
        double a2, b2;
        line_fit(times, lu, k, m - 1, a2, b2);
        double ssr2 = 0;
        for (std::size_t i = k; i < m; ++i) {
            const double r = u[i] - std::exp(a2 + b2 * times[i]);
            ssr2 += r * r;
        }
        const double total = ssr1 + ssr2;
        if (total < best_total) {
            best_total = total;
            best_k = k;
            best_lin_rms = std::sqrt(ssr1 / static_cast<double>(k + 1));
            best_exp_rms = std::sqrt(ssr2 / static_cast<double>(m - k));
        }
    }

    out.defined = true;
    out.index = best_k;
    out.tstar = times[best_k];
    out.linear_residual = best_lin_rms;
    out.exp_residual = best_exp_rms;
    return out;
}

GrowthProfile growth_profile(Method method, const ScenarioPreset& preset, double eps, double h,
                             double tau, double horizon, int sample_stride, int ref_substeps,
                             bool override_stability) {
    if (!(horizon > 0.0)) throw ConfigError("growth_profile: horizon must be positive");
    if (sample_stride < 1) throw ConfigError("growth_profile: sample stride must be >= 1");
    if (ref_substeps < 10)
        throw ConfigError("growth_profile: reference must run at tau/10 or finer");

    GrowthProfile profile;
    profile.method = method;
    profile.eps = eps;
    profile.tau = tau;

    const int n = points_for_spacing(preset, h);
    const GridPtr grid = preset.make_grid(n);
    profile.h = grid->spacing(0);
    const PotentialSpec pot = preset.make_potential(eps);

    const GateResult gate =
        stability_gate(method, tau, *grid, potential_sup_sum(pot, *grid, horizon));
    if (!gate.ok() && !override_stability) throw ConfigError(gate.message);

    const long steps = steps_for(horizon, tau);

    Stepper scheme(method, grid, pot, tau);
    scheme.initialize(preset.make_initial(grid));
    Stepper ref(Method::TSFP, grid, pot, tau / ref_substeps);
    ref.initialize(preset.make_initial(grid));

    auto record = [&] {
        profile.times.push_back(scheme.time());
        profile.errors.push_back(l2_error(scheme.solution_real(), ref.solution_real()));
    };

    record(); // t = 0
    for (long k = 1; k <= steps; ++k) {
        scheme.step();
        ref.advance(ref_substeps);
        if (k % sample_stride == 0 || k == steps) record();
    }

    const BreakpointFit fit = detect_breakpoint(profile.times, profile.errors);
    profile.tstar_defined = fit.defined;
    profile.tstar = fit.tstar;
    profile.linear_residual = fit.linear_residual;
    profile.exp_residual = fit.exp_residual;
    profile.note = fit.note;
    return profile;
}

DensityField density(const SpinorField& real_field) {
    if (real_field.space() != Space::Real)
        throw ContractViolation("density: field must be in real space");
    DensityField out;
    out.grid = real_field.grid_ptr();
    out.rho.resize(real_field.size());
    long double mass = 0.0L;
    for (std::size_t j = 0; j < real_field.size(); ++j) {
        const double r = real_field.at(j).norm2();
        out.rho[j] = r;
        mass += r;
    }
    out.mass = static_cast<double>(mass * static_cast<long double>(out.grid->cell_volume()));
    return out;
}

} // namespace dirac
