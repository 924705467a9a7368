#include "dirac/steppers.hpp"

#include <cmath>

#include "dirac/errors.hpp"

namespace dirac {
namespace {

// Sanity net shared by the step kernels: every participant must sit on the
// same grid, the symbol table must be built at the expected tau, and the
// state's field must be in Fourier space.
void check_kit(const StepperState& st, const PotentialSampler& pot, const SymbolTable& sym,
               const FourierTransform& fft, const StepScratch& scratch, double expected_sym_tau) {
    const Grid& g = st.phi.grid();
    if (!(g == *pot.grid_ptr() && g == *sym.grid_ptr() && g == *fft.grid_ptr() &&
          g == scratch.real.grid() && g == scratch.fourier.grid()))
        throw ContractViolation("stepper kernel: grid mismatch between state, potential, "
                                "symbol table, transform and scratch");
    if (st.phi.space() != Space::Fourier)
        throw ContractViolation("stepper kernel: state field must be in Fourier space");
    if (sym.tau() != expected_sym_tau)
        throw ContractViolation("stepper kernel: symbol table tau does not match the state");
    if (!std::isfinite(st.tau) || st.tau == 0.0)
        throw ContractViolation("stepper kernel: state tau must be finite and nonzero");
}

// W~^n = ((G(t)Phi^n)-tilde into scratch.fourier; zero-filled when the
// coupling vanishes (eps = 0 or no potential components).
void inhomogeneity(const StepperState& st, const PotentialSampler& pot, FourierTransform& fft,
                   StepScratch& scratch, double t) {
    if (!pot.has_coupling()) {
        scratch.fourier.fill_zero();
        return;
    }
    scratch.real = st.phi;
    fft.from_fourier_inplace(scratch.real);
    apply_G_inplace(pot, t, scratch.real);
    scratch.fourier = scratch.real;
    fft.to_fourier_inplace(scratch.fourier);
}

} // namespace

StepperState make_initial_state(SpinorField phi0, double tau, double t0, FourierTransform& fft) {
    if (!std::isfinite(tau) || tau == 0.0)
        throw ConfigError("time step must be finite and nonzero");
    if (!(*phi0.grid_ptr() == *fft.grid_ptr()))
        throw ContractViolation("make_initial_state: field grid does not match transform grid");
    if (phi0.space() == Space::Real) fft.to_fourier_inplace(phi0);
    StepperState st{std::move(phi0), std::nullopt, std::nullopt, 0, tau, t0};
    return st;
}

void ewi_first_step(StepperState& st, const PotentialSampler& pot, const SymbolTable& sym,
                    FourierTransform& fft, StepScratch& scratch) {
    check_kit(st, pot, sym, fft, scratch, st.tau);
    if (st.n != 0) throw ContractViolation("ewi_first_step: state is not at n = 0");

    inhomogeneity(st, pot, fft, scratch, st.time());

    SpinorField result(st.phi.grid_ptr(), Space::Fourier);
    const std::size_t modes = st.phi.size();
    const bool coupled = pot.has_coupling();
    const cplx i_eps(0.0, pot.eps());
    for (std::size_t bin = 0; bin < modes; ++bin) {
        Spinor v = sym.apply(SymbolFn::ExpMinusITau, bin, st.phi.at(bin));
        if (coupled) {
            const Spinor q1w = sym.apply(SymbolFn::GautschiQ1, bin, scratch.fourier.at(bin));
            v = v - i_eps * q1w;
        }
        result.set(bin, v);
    }

    st.phi_prev = std::move(st.phi);
    st.phi = std::move(result);
    st.w_prev = std::move(scratch.fourier);
    scratch.fourier = SpinorField(st.phi.grid_ptr(), Space::Fourier);
    st.n = 1;
}

void ewi_step(StepperState& st, const PotentialSampler& pot, const SymbolTable& sym,
              FourierTransform& fft, StepScratch& scratch) {
    check_kit(st, pot, sym, fft, scratch, st.tau);
    if (st.n < 1) throw ContractViolation("ewi_step: requires n >= 1 (run the first step)");
    if (!st.w_prev)
        throw ContractViolation("ewi_step: missing inhomogeneity history for the "
                                "backward-difference term");

    inhomogeneity(st, pot, fft, scratch, st.time());

    if (!st.phi_prev) st.phi_prev.emplace(st.phi.grid_ptr(), Space::Fourier);
    SpinorField& target = *st.phi_prev; // overwritten; the scheme reads only W history

    const std::size_t modes = st.phi.size();
    const bool coupled = pot.has_coupling();
    const cplx i_eps(0.0, pot.eps());
    const cplx inv_tau(1.0 / st.tau, 0.0);
    for (std::size_t bin = 0; bin < modes; ++bin) {
        Spinor v = sym.apply(SymbolFn::ExpMinusITau, bin, st.phi.at(bin));
        if (coupled) {
            const Spinor w = scratch.fourier.at(bin);
            const Spinor dw = inv_tau * (w - st.w_prev->at(bin));
            const Spinor q = sym.apply(SymbolFn::GautschiQ1, bin, w) +
                             sym.apply(SymbolFn::GautschiQ2, bin, dw);
            v = v - i_eps * q;
        }
        target.set(bin, v);
    }

    std::swap(st.phi, *st.phi_prev);        // phi <- Phi^{n+1}, phi_prev <- Phi^n
    std::swap(*st.w_prev, scratch.fourier); // w_prev <- W~^n
    st.n += 1;
}

void sewi_step(StepperState& st, const PotentialSampler& pot, const SymbolTable& sym,
               FourierTransform& fft, StepScratch& scratch) {
    check_kit(st, pot, sym, fft, scratch, st.tau);
    if (st.n < 1) throw ContractViolation("sewi_step: requires n >= 1 (run the first step)");
    if (!st.phi_prev) throw ContractViolation("sewi_step: missing previous solution Phi^{n-1}");

    inhomogeneity(st, pot, fft, scratch, st.time());

    SpinorField target = st.w_prev ? std::move(*st.w_prev)
                                   : SpinorField(st.phi.grid_ptr(), Space::Fourier);

    const std::size_t modes = st.phi.size();
    const bool coupled = pot.has_coupling();
    const double eps = pot.eps();
    for (std::size_t bin = 0; bin < modes; ++bin) {
        // -2i sin(tau Gamma) = -2i * b_sin * Gamma with b_sin real.
        const Spinor sp = sym.apply(SymbolFn::SinTau, bin, st.phi.at(bin));
        Spinor v = st.phi_prev->at(bin) - cplx(0.0, 2.0) * sp;
        if (coupled) {
            const cplx i_weight(0.0, eps * sym.sewi_weight(bin));
            v = v - i_weight * scratch.fourier.at(bin);
        }
        target.set(bin, v);
    }

    std::swap(*st.phi_prev, st.phi); // phi_prev <- Phi^n
    std::swap(st.phi, target);       // phi <- Phi^{n+1}; target now holds a dead buffer
    st.w_prev = std::move(scratch.fourier);
    scratch.fourier = std::move(target);
    st.n += 1;
}

void tsfp_step(StepperState& st, const PotentialSampler& pot, const SymbolTable& sym_half,
               FourierTransform& fft, StepScratch& scratch) {
    check_kit(st, pot, sym_half, fft, scratch, 0.5 * st.tau);

    const std::size_t modes = st.phi.size();
    auto half_free = [&] {
        for (std::size_t bin = 0; bin < modes; ++bin)
            st.phi.set(bin, sym_half.apply(SymbolFn::ExpMinusITau, bin, st.phi.at(bin)));
    };

    half_free();

    if (pot.has_coupling()) {
        fft.from_fourier_inplace(st.phi);

        // Exact pointwise flow e^{-i theta G}, theta = eps*tau, with
        // G = v*I2 + B, B = -a1*sigma1 - a2*sigma2, B^2 = (a1^2+a2^2)*I2:
        //   e^{-i theta G} = e^{-i theta v} [cos(theta r) I2 - i sin(theta r)/r B].
        const double theta = pot.eps() * st.tau;
        const auto& s = pot.at(st.time() + 0.5 * st.tau);
        auto& c0 = st.phi.component(0);
        auto& c1 = st.phi.component(1);
        const std::size_t n = st.phi.size();
        for (std::size_t j = 0; j < n; ++j) {
            const double v = s.V.empty() ? 0.0 : s.V[j];
            const double a1 = s.A1.empty() ? 0.0 : s.A1[j];
            const double a2 = s.A2.empty() ? 0.0 : s.A2[j];
            const double r = std::hypot(a1, a2);
            const double cs = std::cos(theta * r);
            const double sn = r > 0.0 ? std::sin(theta * r) / r : theta;
            const cplx phase = std::polar(1.0, -theta * v);
            const cplx off(-a1, a2);
            const cplx p0 = c0[j];
            const cplx p1 = c1[j];
            const cplx b0 = off * p1;            // (B p)_1
            const cplx b1 = std::conj(off) * p0; // (B p)_2
            c0[j] = phase * (cs * p0 - cplx(0.0, sn) * b0);
            c1[j] = phase * (cs * p1 - cplx(0.0, sn) * b1);
        }

        fft.to_fourier_inplace(st.phi);
    }

    half_free();
    st.n += 1;
}

namespace {
double checked_tau(double tau) {
    if (!std::isfinite(tau) || tau == 0.0)
        throw ConfigError("Stepper: time step must be finite and nonzero");
    return tau;
}
} // namespace

Stepper::Stepper(Method method, GridPtr grid, PotentialSpec pot, double tau, double t0)
    : method_(method),
      grid_(std::move(grid)),
      sampler_(grid_, std::move(pot)),
      tau_(checked_tau(tau)),
      t0_(t0),
      fft_(grid_),
      sym_(grid_, tau_),
      sym_half_(grid_, 0.5 * tau_),
      scratch_(grid_) {}

void Stepper::initialize(const SpinorField& phi0) {
    state_ = make_initial_state(phi0, tau_, t0_, fft_);
}

void Stepper::step() {
    StepperState& st = require_state();
    switch (method_) {
    case Method::EWI:
        if (st.n == 0)
            ewi_first_step(st, sampler_, sym_, fft_, scratch_);
        else
            ewi_step(st, sampler_, sym_, fft_, scratch_);
        return;
    case Method::SEWI:
        if (st.n == 0)
            ewi_first_step(st, sampler_, sym_, fft_, scratch_);
        else
            sewi_step(st, sampler_, sym_, fft_, scratch_);
        return;
    case Method::TSFP:
        tsfp_step(st, sampler_, sym_half_, fft_, scratch_);
        return;
    }
    throw ContractViolation("Stepper: unknown method");
}

void Stepper::advance(long steps) {
    if (steps < 0) throw ContractViolation("Stepper::advance: negative step count");
    for (long i = 0; i < steps; ++i) step();
}

double Stepper::time() const { return require_state().time(); }
long Stepper::step_index() const { return require_state().n; }
const StepperState& Stepper::state() const { return require_state(); }
StepperState& Stepper::state() { return require_state(); }
const SpinorField& Stepper::solution_fourier() const { return require_state().phi; }

SpinorField Stepper::solution_real() {
    return fft_.from_fourier(require_state().phi);
}

StepperState& Stepper::require_state() {
    if (!state_) throw ContractViolation("Stepper: initialize() must be called before use");
    return *state_;
}

const StepperState& Stepper::require_state() const {
    if (!state_) throw ContractViolation("Stepper: initialize() must be called before use");
    return *state_;
}

} // namespace dirac
