#pragma once

#include "dirac/potential.hpp"
#include "dirac/spinor_field.hpp"

namespace dirac {

/// High-accuracy one-step reference via the integrating-factor (Duhamel)
/// identity, used as ground truth for single-step error measurements:
///
///   Phi~(t_n + tau)_l = e^{-i tau Gamma_l} Phi~^n_l
///                       - i eps Integral_0^tau e^{i(w - tau) Gamma_l} F~_l(w) dw,
///
/// where F~(w) = (G(t_n + w) Phi(t_n + w))-tilde is evaluated along an inner
/// finely sub-stepped TSFP trajectory (`substeps` sub-intervals of tau). The
/// integral is computed by composite Simpson rules on nested dyadic meshes;
/// the finest two levels must agree to `tolerance` in the discrete l2 norm or
/// an OracleFailure is thrown (test-infrastructure error, not a solver error).
///
/// Requirements: phi in Fourier space, tau > 0, 0 < tolerance <= 1e-10,
/// substeps = 16 * 2^k.
SpinorField duhamel_oracle(const SpinorField& phi_fourier, const PotentialSpec& pot, double t_n,
                           double tau, double tolerance = 1e-10, int substeps = 2048);

} // namespace dirac
