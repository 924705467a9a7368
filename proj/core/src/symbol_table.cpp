#include "dirac/symbol_table.hpp"

#include <cmath>

#include "dirac/errors.hpp"

namespace dirac {
namespace {

// sin(z) - z with the leading cancellation removed near zero. For |z| below
// the switch point the direct difference loses ~9 digits; the odd Taylor
// series through z^7 leaves a relative error ~1e-23 there.
double sin_minus_z(double z) {
    if (std::abs(z) < 1e-3) {
        const double z2 = z * z;
        return z * z2 * (-1.0 / 6.0 + z2 * (1.0 / 120.0 - z2 / 5040.0));
    }
    return std::sin(z) - z;
}

// 1 - cos(z) without cancellation.
double one_minus_cos(double z) {
    const double s = std::sin(0.5 * z);
    return 2.0 * s * s;
}

} // namespace

SymbolTable::SymbolTable(GridPtr grid, double tau) : grid_(std::move(grid)), tau_(tau) {
    if (!grid_) throw ContractViolation("SymbolTable: null grid");
    if (!std::isfinite(tau_) || tau_ == 0.0)
        throw ConfigError("SymbolTable: tau must be finite and nonzero");

    const std::size_t n = grid_->size();
    delta_.resize(n);
    g12_.resize(n);
    exp_a_.resize(n);
    exp_b_im_.resize(n);
    sin_b_.resize(n);

    gautschi_available_ = tau_ > 0.0;
    if (gautschi_available_) {
        q1_a_.resize(n);
        q1_b_im_.resize(n);
        q2_a_.resize(n);
        q2_b_im_.resize(n);
    }

    const auto& mu1 = grid_->wavenumbers(0);
    const std::vector<double>* mu2 = grid_->dim() == 2 ? &grid_->wavenumbers(1) : nullptr;
    const std::size_t n1 = static_cast<std::size_t>(grid_->points(0));

    for (std::size_t bin = 0; bin < n; ++bin) {
        const double m1 = mu1[bin % n1];
        const double m2 = mu2 ? (*mu2)[bin / n1] : 0.0;
        const double delta = std::sqrt(1.0 + m1 * m1 + m2 * m2);
        const double z = tau_ * delta;
        const double sz = std::sin(z);
        const double omc = one_minus_cos(z);
        const double d2 = delta * delta;

        delta_[bin] = delta;
        g12_[bin] = cplx(m1, -m2);
        exp_a_[bin] = std::cos(z);
        exp_b_im_[bin] = -sz / delta;
        sin_b_[bin] = sz / delta;
        if (gautschi_available_) {
            q1_a_[bin] = sz / delta;
            q1_b_im_[bin] = -omc / d2;
            q2_a_[bin] = omc / d2;
            q2_b_im_[bin] = sin_minus_z(z) / (d2 * delta);
        }
    }
}

SymbolCoeff SymbolTable::coeff(SymbolFn f, std::size_t bin) const {
    if (bin >= delta_.size()) throw ContractViolation("SymbolTable: mode index out of range");
    switch (f) {
    case SymbolFn::ExpMinusITau:
        return {cplx(exp_a_[bin], 0.0), cplx(0.0, exp_b_im_[bin])};
    case SymbolFn::SinTau:
        return {cplx(0.0, 0.0), cplx(sin_b_[bin], 0.0)};
    case SymbolFn::Inverse:
        return {cplx(0.0, 0.0), cplx(1.0 / (delta_[bin] * delta_[bin]), 0.0)};
    case SymbolFn::GautschiQ1:
        if (!gautschi_available_)
            throw ConfigError("SymbolTable: Gautschi weights require tau > 0");
        return {cplx(q1_a_[bin], 0.0), cplx(0.0, q1_b_im_[bin])};
    case SymbolFn::GautschiQ2:
        if (!gautschi_available_)
            throw ConfigError("SymbolTable: Gautschi weights require tau > 0");
        return {cplx(q2_a_[bin], 0.0), cplx(0.0, q2_b_im_[bin])};
    }
    throw ContractViolation("SymbolTable: unknown symbol function");
}

std::pair<SymbolCoeff, SymbolCoeff> SymbolTable::gautschi_weights(std::size_t bin) const {
    return {coeff(SymbolFn::GautschiQ1, bin), coeff(SymbolFn::GautschiQ2, bin)};
}

double SymbolTable::operator_norm(SymbolFn f, std::size_t bin) const {
    const SymbolCoeff c = coeff(f, bin);
    const double d = delta_[bin];
    return std::max(std::abs(c.a + c.b * d), std::abs(c.a - c.b * d));
}

} // namespace dirac
