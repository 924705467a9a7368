#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dirac/grid.hpp"
#include "dirac/spinor_field.hpp"

namespace dirac {

/// Real scalar function of (x, y, t); y is ignored by 1D potentials.
using ScalarFn = std::function<double(double x, double y, double t)>;

/// Electromagnetic potential data for the coupling term eps*G(t,x),
/// G = V*I2 - sum_j A_j*sigma_j. A null component means identically zero.
///
/// eps lies in [0,1]: the model is stated for eps in (0,1], and eps = 0 is
/// additionally accepted as the exact free-flow limit (used heavily by
/// conservation checks).
struct PotentialSpec {
    double eps = 1.0;
    ScalarFn V;
    ScalarFn A1;
    ScalarFn A2; // 2D only
    bool time_independent = false;

    // Optional user-declared sup-norm bounds, consumed by the stability gate.
    // Components without a declared bound fall back to grid sampling there.
    std::optional<double> sup_V;
    std::optional<double> sup_A1;
    std::optional<double> sup_A2;

    bool has_coupling() const { return eps != 0.0 && (V || A1 || A2); }
};

/// Build a PotentialSpec from expression strings ("" means the component is
/// zero). `dim` gates the variable set: 'y' is rejected in 1D, A2 must be
/// empty in 1D. time_independent is inferred from the expressions.
PotentialSpec expression_potential(double eps, int dim, std::string_view v_text,
                                   std::string_view a1_text, std::string_view a2_text = {});

/// Samples a PotentialSpec on a fixed grid. Time-independent potentials are
/// sampled once and cached; time-dependent ones are resampled per requested
/// time. Not safe for concurrent at() calls on the same instance — each
/// simulation owns its sampler.
class PotentialSampler {
public:
    struct Samples {
        double t = 0.0;
        std::vector<double> V, A1, A2; // empty vector = component is zero
    };

    PotentialSampler(GridPtr grid, PotentialSpec spec);

    const GridPtr& grid_ptr() const { return grid_; }
    const PotentialSpec& spec() const { return spec_; }
    double eps() const { return spec_.eps; }
    bool has_coupling() const { return spec_.has_coupling(); }

    /// Grid samples of V, A_j at time t. ConfigError if any sample is
    /// non-finite (the non-real marker of the expression engine).
    const Samples& at(double t) const;

private:
    GridPtr grid_;
    PotentialSpec spec_;
    mutable Samples cache_;
    mutable bool cache_valid_ = false;
};

/// Pointwise action of G(t,x) = V*I2 - sum_j A_j*sigma_j on a real-space
/// field (no eps factor; the schemes scale by eps where they use it).
/// Linear in the field. ContractViolation on grid/space mismatch.
void apply_G_inplace(const PotentialSampler& pot, double t, SpinorField& field);
SpinorField apply_G(const PotentialSampler& pot, double t, const SpinorField& field);

} // namespace dirac
