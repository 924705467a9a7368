#pragma once

#include <memory>
#include <optional>

#include "dirac/fourier.hpp"
#include "dirac/potential.hpp"
#include "dirac/spinor_field.hpp"
#include "dirac/stability.hpp"
#include "dirac/symbol_table.hpp"

namespace dirac {

/// Marching state shared by all schemes. Fields live in Fourier space; times
/// are always derived as t0 + n*tau (tau is stored once, never accumulated).
struct StepperState {
    SpinorField phi;                      // current solution, Fourier space
    std::optional<SpinorField> phi_prev;  // previous solution (n >= 1)
    std::optional<SpinorField> w_prev;    // (G(t_{n-1})Phi^{n-1})-tilde, for the
                                          // EWI backward-difference term
    long n = 0;
    double tau = 0.0;
    double t0 = 0.0;

    double time() const { return t0 + static_cast<double>(n) * tau; }
};

/// Reusable per-step buffers (one real-space, one Fourier-space field).
struct StepScratch {
    SpinorField real;
    SpinorField fourier;
    explicit StepScratch(GridPtr grid) : real(grid, Space::Real), fourier(std::move(grid), Space::Fourier) {}
};

/// Build the n = 0 state from initial data (accepted in either space; it is
/// transformed to Fourier space as needed).
StepperState make_initial_state(SpinorField phi0, double tau, double t0, FourierTransform& fft);

/// Shared first step of the EWI and sEWI schemes:
///   Phi~^1 = e^{-i tau Gamma} Phi~^0 - eps Gamma^{-1}[I - e^{-i tau Gamma}] W~^0,
/// W = G(t0)Phi^0. Requires n == 0 (ContractViolation otherwise); seeds the
/// history fields. `sym` must be built at the state's tau.
void ewi_first_step(StepperState& st, const PotentialSampler& pot, const SymbolTable& sym,
                    FourierTransform& fft, StepScratch& scratch);

/// EWI-FP step for n >= 1:
///   Phi~^{n+1} = e^{-i tau Gamma} Phi~^n - i eps Q1 W~^n - i eps Q2 (W~^n - W~^{n-1})/tau.
/// Requires the W history (ContractViolation if absent).
void ewi_step(StepperState& st, const PotentialSampler& pot, const SymbolTable& sym,
              FourierTransform& fft, StepScratch& scratch);

/// sEWI-FP step for n >= 1 (time-reversible: negate tau and it runs backward):
///   Phi~^{n+1} = Phi~^{n-1} - 2i sin(tau Gamma) Phi~^n - i (2 eps/delta) sin(tau delta) W~^n.
/// Requires Phi^{n-1} (ContractViolation if absent).
void sewi_step(StepperState& st, const PotentialSampler& pot, const SymbolTable& sym,
               FourierTransform& fft, StepScratch& scratch);

/// Strang-splitting reference step: half free flow, exact pointwise potential
/// flow e^{-i eps tau G(t_n + tau/2, x)}, half free flow. Norm-conserving to
/// roundoff. `sym_half` must be built at tau/2 of the state's tau. Does not
/// touch the history fields.
void tsfp_step(StepperState& st, const PotentialSampler& pot, const SymbolTable& sym_half,
               FourierTransform& fft, StepScratch& scratch);

/// Convenience driver owning the transform, symbol tables, sampler, state and
/// scratch for one trajectory. Stability gating is the caller's concern (the
/// run harness applies it before constructing a stepper).
class Stepper {
public:
    Stepper(Method method, GridPtr grid, PotentialSpec pot, double tau, double t0 = 0.0);

    /// Set/replace the initial data and reset to n = 0.
    void initialize(const SpinorField& phi0);

    void step();
    void advance(long steps);

    Method method() const { return method_; }
    const Grid& grid() const { return *grid_; }
    const GridPtr& grid_ptr() const { return grid_; }
    const PotentialSampler& potential() const { return sampler_; }
    double tau() const { return tau_; }
    double time() const;
    long step_index() const;

    /// ContractViolation before initialize().
    const StepperState& state() const;
    StepperState& state();

    const SpinorField& solution_fourier() const;
    SpinorField solution_real();

private:
    StepperState& require_state();
    const StepperState& require_state() const;

    Method method_;
    GridPtr grid_;
    PotentialSampler sampler_;
    double tau_;
    double t0_;
    FourierTransform fft_;
    SymbolTable sym_;      // at tau (EWI/sEWI kernels)
    SymbolTable sym_half_; // at tau/2 (TSFP kernel)
    std::optional<StepperState> state_;
    StepScratch scratch_;
};

} // namespace dirac
