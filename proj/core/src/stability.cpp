#include "dirac/stability.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "dirac/errors.hpp"

namespace dirac {

std::string method_name(Method m) {
    switch (m) {
    case Method::EWI: return "ewi-fp";
    case Method::SEWI: return "sewi-fp";
    case Method::TSFP: return "tsfp";
    }
    throw ContractViolation("method_name: unknown method");
}

Method method_from_name(const std::string& name) {
    if (name == "ewi-fp" || name == "ewi") return Method::EWI;
    if (name == "sewi-fp" || name == "sewi") return Method::SEWI;
    if (name == "tsfp") return Method::TSFP;
    throw ConfigError("unknown method '" + name + "' (expected ewi-fp, sewi-fp or tsfp)");
}

namespace {

double sampled_sup(const ScalarFn& fn, const Grid& grid, double horizon) {
    // 4x refined per axis, three time slices; conservative heuristic.
    const int refine = 4;
    const double times[3] = {0.0, 0.5 * horizon, horizon};
    double sup = 0.0;
    const int n1 = grid.points(0) * refine;
    const int n2 = grid.dim() == 2 ? grid.points(1) * refine : 1;
    const double h1 = grid.length(0) / n1;
    const double h2 = grid.dim() == 2 ? grid.length(1) / n2 : 0.0;
    for (double t : times) {
        for (int iy = 0; iy < n2; ++iy) {
            const double y = grid.dim() == 2 ? grid.lower(1) + iy * h2 : 0.0;
            for (int ix = 0; ix < n1; ++ix) {
                const double x = grid.lower(0) + ix * h1;
                const double v = fn(x, y, t);
                if (!std::isfinite(v))
                    throw ConfigError("potential sup sampling hit a non-finite value");
                sup = std::max(sup, std::abs(v));
            }
        }
        if (times[1] == times[0] && times[2] == times[0]) break; // horizon == 0
    }
    return sup;
}

double component_sup(const ScalarFn& fn, const std::optional<double>& declared, const Grid& grid,
                     double horizon) {
    if (!fn) return 0.0;
    if (declared) {
        if (!(*declared >= 0.0) || !std::isfinite(*declared))
            throw ConfigError("declared potential sup bound must be finite and >= 0");
        return *declared;
    }
    return sampled_sup(fn, grid, horizon);
}

} // namespace

double potential_sup_sum(const PotentialSpec& spec, const Grid& grid, double horizon) {
    return component_sup(spec.V, spec.sup_V, grid, horizon) +
           component_sup(spec.A1, spec.sup_A1, grid, horizon) +
           component_sup(spec.A2, spec.sup_A2, grid, horizon);
}

GateResult stability_gate(Method method, double tau, const Grid& grid, double c_sum) {
    if (!(std::isfinite(tau)) || tau == 0.0)
        throw ConfigError("stability_gate: tau must be finite and nonzero");
    if (!(c_sum >= 0.0)) throw ConfigError("stability_gate: negative potential bound");

    const double at = std::abs(tau);
    GateResult r;

    switch (method) {
    case Method::TSFP:
        r.bound = std::numeric_limits<double>::infinity();
        return r;

    case Method::EWI:
        r.bound = 1.0;
        if (at > 1.0) {
            r.status = GateResult::Status::Warning;
            std::ostringstream os;
            os << "ewi stability warning: tau = " << at << " exceeds the bound tau <= 1";
            r.message = os.str();
        }
        return r;

    case Method::SEWI: {
        const double free_bound = std::numbers::pi / (3.0 * grid.max_delta());
        const double pot_bound = c_sum > 0.0
                                     ? (2.0 - std::sqrt(3.0)) / (2.0 * c_sum)
                                     : std::numeric_limits<double>::infinity();
        r.bound = std::min(free_bound, pot_bound);
        if (!(at < r.bound)) {
            r.status = GateResult::Status::Rejected;
            std::ostringstream os;
            os.precision(12);
            os << "sewi stability bound violated: tau = " << at
               << " must be below min(pi/(3*delta_max), (2-sqrt(3))/(2*C)) = " << r.bound
               << " (delta_max = " << grid.max_delta() << ", C = " << c_sum << ")";
            r.message = os.str();
        }
        return r;
    }
    }
    throw ContractViolation("stability_gate: unknown method");
}

} // namespace dirac
