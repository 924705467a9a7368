#include "dirac/potential.hpp"

#include <cmath>

#include "dirac/errors.hpp"
#include "dirac/expression.hpp"

namespace dirac {
namespace {

ScalarFn compile_component(std::string_view text, int dim, bool allow_t, const char* label,
                           bool& time_dependent) {
    if (text.empty()) return {};
    Expression expr = Expression::parse(text);
    if (dim == 1 && expr.uses_y())
        throw ConfigError(std::string(label) + ": variable 'y' is not available in 1D");
    if (!allow_t && expr.uses_t())
        throw ConfigError(std::string(label) + ": variable 't' is not available here");
    time_dependent = time_dependent || expr.uses_t();
    return [expr = std::move(expr)](double x, double y, double t) { return expr.eval(x, y, t); };
}

} // namespace

PotentialSpec expression_potential(double eps, int dim, std::string_view v_text,
                                   std::string_view a1_text, std::string_view a2_text) {
    if (dim != 1 && dim != 2) throw ConfigError("expression_potential: dim must be 1 or 2");
    if (!(eps >= 0.0 && eps <= 1.0))
        throw ConfigError("expression_potential: eps must lie in [0, 1]");
    if (dim == 1 && !a2_text.empty())
        throw ConfigError("expression_potential: A2 is not available in 1D");

    PotentialSpec spec;
    spec.eps = eps;
    bool time_dependent = false;
    spec.V = compile_component(v_text, dim, true, "V", time_dependent);
    spec.A1 = compile_component(a1_text, dim, true, "A1", time_dependent);
    spec.A2 = compile_component(a2_text, dim, true, "A2", time_dependent);
    spec.time_independent = !time_dependent;
    return spec;
}

PotentialSampler::PotentialSampler(GridPtr grid, PotentialSpec spec)
    : grid_(std::move(grid)), spec_(std::move(spec)) {
    if (!grid_) throw ContractViolation("PotentialSampler: null grid");
    if (grid_->dim() == 1 && spec_.A2)
        throw ConfigError("PotentialSampler: A2 set on a 1D grid");
    if (!(spec_.eps >= 0.0 && spec_.eps <= 1.0))
        throw ConfigError("PotentialSampler: eps must lie in [0, 1]");
}

const PotentialSampler::Samples& PotentialSampler::at(double t) const {
    if (cache_valid_ && (spec_.time_independent || cache_.t == t)) return cache_;

    const std::size_t n = grid_->size();
    const std::size_t n1 = static_cast<std::size_t>(grid_->points(0));
    auto sample = [&](const ScalarFn& fn, std::vector<double>& out, const char* label) {
        if (!fn) {
            out.clear();
            return;
        }
        out.resize(n);
        for (std::size_t j = 0; j < n; ++j) {
            const double x = grid_->node(0, static_cast<int>(j % n1));
            const double y = grid_->dim() == 2 ? grid_->node(1, static_cast<int>(j / n1)) : 0.0;
            const double v = fn(x, y, t);
            if (!std::isfinite(v))
                throw ConfigError(std::string(label) + " evaluated to a non-finite value at x=" +
                                  std::to_string(x) + " y=" + std::to_string(y) +
                                  " t=" + std::to_string(t));
            out[j] = v;
        }
    };

    cache_.t = t;
    sample(spec_.V, cache_.V, "potential V");
    sample(spec_.A1, cache_.A1, "potential A1");
    sample(spec_.A2, cache_.A2, "potential A2");
    cache_valid_ = true;
    return cache_;
}

void apply_G_inplace(const PotentialSampler& pot, double t, SpinorField& field) {
    if (field.space() != Space::Real)
        throw ContractViolation("apply_G: field must be in real space");
    if (!(*field.grid_ptr() == *pot.grid_ptr()))
        throw ContractViolation("apply_G: field grid does not match potential grid");

    const auto& s = pot.at(t);
    const std::size_t n = field.grid().size();
    auto& c0 = field.component(0);
    auto& c1 = field.component(1);

    // G = [[V, -A1 + i*A2], [-A1 - i*A2, V]] acting pointwise.
    for (std::size_t j = 0; j < n; ++j) {
        const double v = s.V.empty() ? 0.0 : s.V[j];
        const double a1 = s.A1.empty() ? 0.0 : s.A1[j];
        const double a2 = s.A2.empty() ? 0.0 : s.A2[j];
        const cplx off(-a1, a2);
        const cplx p0 = c0[j];
        const cplx p1 = c1[j];
        c0[j] = v * p0 + off * p1;
        c1[j] = std::conj(off) * p0 + v * p1;
    }
}

SpinorField apply_G(const PotentialSampler& pot, double t, const SpinorField& field) {
    SpinorField out = field;
    apply_G_inplace(pot, t, out);
    return out;
}

} // namespace dirac
