#include "dirac/presets.hpp"

#include <numbers>

#include "dirac/errors.hpp"
#include "dirac/expression.hpp"

namespace dirac {

GridPtr ScenarioPreset::make_grid(int points_per_axis) const {
    if (dim == 1) return make_grid_1d(lower[0], upper[0], points_per_axis);
    return make_grid_2d({lower[0], lower[1]}, {upper[0], upper[1]},
                        {points_per_axis, points_per_axis});
}

PotentialSpec ScenarioPreset::make_potential(double eps) const {
    return expression_potential(eps, dim, v_text, a1_text, a2_text);
}

SpinorField ScenarioPreset::make_initial(GridPtr grid) const {
    if (!grid || grid->dim() != dim)
        throw ConfigError("preset '" + name + "': grid dimension mismatch");
    auto compile = [&](const std::string& text) { return Expression::parse(text); };
    const Expression p1r = compile(phi1_re), p1i = compile(phi1_im);
    const Expression p2r = compile(phi2_re), p2i = compile(phi2_im);

    SpinorField field(std::move(grid), Space::Real);
    const std::size_t n1 = static_cast<std::size_t>(field.grid().points(0));
    for (std::size_t j = 0; j < field.grid().size(); ++j) {
        const double x = field.grid().node(0, static_cast<int>(j % n1));
        const double y = dim == 2 ? field.grid().node(1, static_cast<int>(j / n1)) : 0.0;
        field.component(0)[j] = cplx(p1r.eval(x, y, 0.0), p1i.eval(x, y, 0.0));
        field.component(1)[j] = cplx(p2r.eval(x, y, 0.0), p2i.eval(x, y, 0.0));
    }
    return field;
}

const ScenarioPreset& preset_1d_convergence() {
    static const ScenarioPreset preset = [] {
        ScenarioPreset p;
        p.name = "1d-convergence";
        p.description = "1D smooth periodic scenario on (0, 2*pi) for convergence and "
                        "uniformity studies";
        p.dim = 1;
        p.lower[0] = 0.0;
        p.upper[0] = 2.0 * std::numbers::pi;
        p.v_text = "2/(2+cos(x))";
        p.a1_text = "1/(2+cos(x))";
        p.phi1_re = "1/(2+cos(x))";
        p.phi1_im = "0";
        p.phi2_re = "1/(1+sin(x)^2)";
        p.phi2_im = "0";
        p.default_eps = {1.0, 0.5, 0.25};
        return p;
    }();
    return preset;
}

const ScenarioPreset& preset_2d_honeycomb() {
    static const ScenarioPreset preset = [] {
        ScenarioPreset p;
        p.name = "2d-honeycomb";
        p.description = "2D honeycomb-lattice potential on (-15, 15)^2 with a Gaussian "
                        "initial spinor";
        p.dim = 2;
        p.lower[0] = p.lower[1] = -15.0;
        p.upper[0] = p.upper[1] = 15.0;
        // V = sum_k cos((4*pi/sqrt(3)) e_k . x) with the lattice directions
        // e1 = (-1,0), e2 = (1/2, sqrt(3)/2), e3 = (1/2, -sqrt(3)/2).
        p.v_text = "cos(4*pi/3^0.5*(-x)) + cos(4*pi/3^0.5*(x/2 + 3^0.5/2*y))"
                   " + cos(4*pi/3^0.5*(x/2 - 3^0.5/2*y))";
        p.phi1_re = "exp(-(x^2+y^2)/2)";
        p.phi1_im = "0";
        p.phi2_re = "exp(-(x^2+y^2)/2)";
        p.phi2_im = "0";
        p.default_eps = {1.0, 0.001};
        return p;
    }();
    return preset;
}

const std::vector<const ScenarioPreset*>& all_presets() {
    static const std::vector<const ScenarioPreset*> list = {&preset_1d_convergence(),
                                                            &preset_2d_honeycomb()};
    return list;
}

const ScenarioPreset* find_preset(const std::string& name) {
    for (const ScenarioPreset* p : all_presets())
        if (p->name == name) return p;
    return nullptr;
}

} // namespace dirac
