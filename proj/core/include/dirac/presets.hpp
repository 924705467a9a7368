#pragma once

#include <string>
#include <vector>

#include "dirac/grid.hpp"
#include "dirac/potential.hpp"
#include "dirac/spinor_field.hpp"

namespace dirac {

/// A named, self-contained experiment setup: domain, potential and initial
/// data as expression strings (so configs and docs show the exact formulas),
/// plus the eps values the scenario is typically run at.
struct ScenarioPreset {
    std::string name;
    std::string description; // one line, for the preset listing
    int dim = 1;
    double lower[2] = {0.0, 0.0};
    double upper[2] = {0.0, 0.0};
    std::string v_text, a1_text, a2_text;                 // "" = component is zero
    std::string phi1_re, phi1_im, phi2_re, phi2_im;       // initial spinor components
    std::vector<double> default_eps;

    GridPtr make_grid(int points_per_axis) const;
    PotentialSpec make_potential(double eps) const;
    SpinorField make_initial(GridPtr grid) const;
};

/// 1D scenario: Omega = (0, 2*pi), V = 2/(2+cos x), A1 = 1/(2+cos x),
/// phi1(0,x) = 1/(2+cos x), phi2(0,x) = 1/(1+sin^2 x). Time-independent.
const ScenarioPreset& preset_1d_convergence();

/// 2D scenario: Omega = (-15,15)^2, honeycomb-lattice electric potential
/// V(x) = sum_k cos((4*pi/sqrt 3) e_k . x), A = 0, Gaussian initial spinor.
const ScenarioPreset& preset_2d_honeycomb();

/// All registered presets, lookup by name (nullptr if absent).
const std::vector<const ScenarioPreset*>& all_presets();
const ScenarioPreset* find_preset(const std::string& name);

} // namespace dirac
