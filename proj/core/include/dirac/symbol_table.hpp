#pragma once

#include <array>
#include <vector>

#include "dirac/grid.hpp"
#include "dirac/spinor.hpp"

namespace dirac {

/// Scalar functions of the free-Dirac symbol Gamma_l that the integrators
/// need. Every f(Gamma_l) is expressed through the pair (a_f, b_f) with
///   f(Gamma_l) = a_f*I2 + b_f*Gamma_l,
///   a_f = (f(delta_l) + f(-delta_l))/2,  b_f = (f(delta_l) - f(-delta_l))/(2*delta_l),
/// which is exact because Gamma_l^2 = delta_l^2*I2.
enum class SymbolFn {
    ExpMinusITau, ///< e^{-i*tau*Gamma}
    SinTau,       ///< sin(tau*Gamma)
    Inverse,      ///< Gamma^{-1} = Gamma/delta^2
    GautschiQ1,   ///< Q1(tau) = -i*Gamma^{-1}[I - e^{-i*tau*Gamma}]
    GautschiQ2,   ///< Q2(tau) = -i*tau*Gamma^{-1} + Gamma^{-2}[I - e^{-i*tau*Gamma}]
};

struct SymbolCoeff {
    cplx a{};
    cplx b{};
};

/// Per-mode symbol data for one (grid, tau) pair, stored in DFT bin order.
///
/// In 1D, Gamma_l = mu_l*sigma1 + sigma3; in 2D, Gamma_l = mu1*sigma1 +
/// mu2*sigma2 + sigma3. Both are Hermitian with eigenvalues +-delta_l,
/// delta_l = sqrt(1 + |mu_l|^2) >= 1. The off-diagonal entry mu1 - i*mu2 is
/// all that is needed to apply Gamma_l.
///
/// The Gautschi weights are only defined for tau > 0; the table accepts any
/// nonzero tau (the symmetric scheme is stepped backwards in time-reversal
/// checks) but querying Q1/Q2 with tau <= 0 is a configuration error.
class SymbolTable {
public:
    SymbolTable(GridPtr grid, double tau);

    const GridPtr& grid_ptr() const { return grid_; }
    double tau() const { return tau_; }
    std::size_t modes() const { return delta_.size(); }

    double delta(std::size_t bin) const { return delta_[bin]; }
    cplx gamma_offdiag(std::size_t bin) const { return g12_[bin]; }

    SymbolCoeff coeff(SymbolFn f, std::size_t bin) const;

    Spinor apply_gamma(std::size_t bin, Spinor v) const {
        const cplx g = g12_[bin];
        return {v.c0 + g * v.c1, std::conj(g) * v.c0 - v.c1};
    }

    Spinor apply(SymbolFn f, std::size_t bin, Spinor v) const {
        const SymbolCoeff c = coeff(f, bin);
        const Spinor gv = apply_gamma(bin, v);
        return {c.a * v.c0 + c.b * gv.c0, c.a * v.c1 + c.b * gv.c1};
    }

    /// (Q1, Q2) coefficient pairs for one mode. ConfigError if tau <= 0.
    std::pair<SymbolCoeff, SymbolCoeff> gautschi_weights(std::size_t bin) const;

    /// Spectral 2-norm of f(Gamma_l): max(|a + b*delta|, |a - b*delta|),
    /// exact since f(Gamma_l) is normal.
    double operator_norm(SymbolFn f, std::size_t bin) const;

    /// Scalar weight (2/delta_l)*sin(tau*delta_l) of the symmetric scheme's
    /// potential term.
    double sewi_weight(std::size_t bin) const { return 2.0 * sin_b_[bin]; }

private:
    GridPtr grid_;
    double tau_;
    std::vector<double> delta_;
    std::vector<cplx> g12_;
    // exp(-i*tau*Gamma): a = cos(tau*delta) (real), b = -i*sin(tau*delta)/delta.
    std::vector<double> exp_a_;
    std::vector<double> exp_b_im_; // b = i*exp_b_im_, exp_b_im_ = -sin(tau*delta)/delta
    // sin(tau*Gamma): a = 0, b = sin(tau*delta)/delta (real).
    std::vector<double> sin_b_;
    // Q1: a = sin(z)/delta (real), b = -i*(1-cos z)/delta^2.
    // Q2: a = (1-cos z)/delta^2 (real), b = i*(sin z - z)/delta^3.  (z = tau*delta)
    std::vector<double> q1_a_, q1_b_im_, q2_a_, q2_b_im_;
    bool gautschi_available_ = false;
};

} // namespace dirac
