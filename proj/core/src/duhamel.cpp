#include "dirac/duhamel.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "dirac/errors.hpp"
#include "dirac/fourier.hpp"
#include "dirac/steppers.hpp"
#include "dirac/symbol_table.hpp"

namespace dirac {

namespace {

// Simpson sum of e^{i(w-tau)Gamma_l} F~_l(w) over the dyadic sub-mesh with
// `intervals` intervals, reading every (substeps/intervals)-th trajectory
// sample. `w_hat[k]` holds F~ at w_k = k*tau/substeps.
SpinorField simpson_level(const std::vector<SpinorField>& w_hat, const SymbolTable& sym,
                          double tau, int substeps, int intervals) {
    const int stride = substeps / intervals;
    const double hw = tau / intervals;
    const std::size_t modes = w_hat[0].size();

    SpinorField acc(w_hat[0].grid_ptr(), Space::Fourier);
    acc.fill_zero();

    for (int node = 0; node <= intervals; ++node) {
        const double weight =
            (node == 0 || node == intervals) ? hw / 3.0 : (node % 2 == 1 ? 4.0 * hw / 3.0 : 2.0 * hw / 3.0);
        const double w = (static_cast<double>(node) * stride / substeps) * tau;
        const double theta = w - tau; // e^{i*theta*Gamma_l}
        const SpinorField& f = w_hat[static_cast<std::size_t>(node) * stride];
        for (std::size_t bin = 0; bin < modes; ++bin) {
            const double d = sym.delta(bin);
            const cplx a(std::cos(theta * d), 0.0);
            const cplx b(0.0, std::sin(theta * d) / d);
            const Spinor v = f.at(bin);
            const Spinor gv = sym.apply_gamma(bin, v);
            acc.set(bin, acc.at(bin) + weight * (a * v + b * gv));
        }
    }
    return acc;
}

} // namespace

SpinorField duhamel_oracle(const SpinorField& phi_fourier, const PotentialSpec& pot, double t_n,
                           double tau, double tolerance, int substeps) {
    if (phi_fourier.space() != Space::Fourier)
        throw ContractViolation("duhamel_oracle: field must be in Fourier space");
    if (!(tau > 0.0) || !std::isfinite(tau))
        throw ConfigError("duhamel_oracle: tau must be positive and finite");
    if (!(tolerance > 0.0) || tolerance > 1e-10)
        throw ConfigError("duhamel_oracle: tolerance must lie in (0, 1e-10]");
    {
        int m = substeps;
        while (m > 16 && m % 2 == 0) m /= 2;
        if (m != 16) throw ConfigError("duhamel_oracle: substeps must be 16 * 2^k");
    }

    const GridPtr grid = phi_fourier.grid_ptr();
    FourierTransform fft(grid);
    const SymbolTable sym(grid, tau);
    const std::size_t modes = phi_fourier.size();

    // Exact free part e^{-i tau Gamma} Phi~^n.
    SpinorField result(grid, Space::Fourier);
    for (std::size_t bin = 0; bin < modes; ++bin)
        result.set(bin, sym.apply(SymbolFn::ExpMinusITau, bin, phi_fourier.at(bin)));

    if (!pot.has_coupling()) return result; // integral is identically zero

    // Inner trajectory: F~ samples at w_k = k*tau/substeps along a TSFP run
    // with substep tau/substeps.
    PotentialSampler sampler(grid, pot);
    const double sigma = tau / substeps;
    const SymbolTable sym_half(grid, 0.5 * sigma);
    StepScratch scratch(grid);
    StepperState st{phi_fourier, std::nullopt, std::nullopt, 0, sigma, t_n};

    std::vector<SpinorField> w_hat;
    w_hat.reserve(static_cast<std::size_t>(substeps) + 1);
    for (int k = 0;; ++k) {
        SpinorField w_real = fft.from_fourier(st.phi);
        apply_G_inplace(sampler, t_n + k * sigma, w_real);
        fft.to_fourier_inplace(w_real);
        w_hat.push_back(std::move(w_real));
        if (k == substeps) break;
        tsfp_step(st, sampler, sym_half, fft, scratch);
    }

    // Nested Simpson levels until two consecutive levels agree.
    const cplx i_eps(0.0, pot.eps);
    SpinorField prev(grid, Space::Fourier);
    bool have_prev = false;
    double achieved = std::numeric_limits<double>::infinity();
    for (int intervals = 16; intervals <= substeps; intervals *= 2) {
        SpinorField integral = simpson_level(w_hat, sym, tau, substeps, intervals);
        if (have_prev) {
            SpinorField diff = integral;
            diff -= prev;
            diff *= i_eps; // compare at the scale the integral enters the result
            achieved = diff.norm_l2();
            if (achieved <= tolerance) {
                integral *= i_eps;
                result -= integral;
                return result;
            }
        }
        prev = std::move(integral);
        have_prev = true;
    }

    std::ostringstream os;
    os << "duhamel_oracle: quadrature did not reach tolerance " << tolerance
       << " (last inter-level difference " << achieved << ", " << substeps << " substeps)";
    throw OracleFailure(os.str());
}

} // namespace dirac
