#pragma once

#include <memory>

#include "dirac/spinor_field.hpp"

namespace dirac {

/// FFT-backed maps between the real-space samples and the interpolation
/// Fourier coefficients of a SpinorField. One instance owns the FFTW plans
/// for its grid; executing a plan on caller data is thread-safe, so a const
/// FourierTransform may be shared across threads.
///
/// Conventions (per axis of length N):
///   to_fourier:   U_tilde_l = (1/N) sum_j U_j e^{-2*pi*i*j*l/N}
///   from_fourier: U_j = sum_l U_tilde_l e^{+2*pi*i*j*l/N}
/// Coefficients are stored in DFT bin order (mode l in bin l mod N).
class FourierTransform {
public:
    explicit FourierTransform(GridPtr grid);
    ~FourierTransform();

    FourierTransform(const FourierTransform&) = delete;
    FourierTransform& operator=(const FourierTransform&) = delete;

    const GridPtr& grid_ptr() const { return grid_; }

    SpinorField to_fourier(const SpinorField& real_field) const;
    SpinorField from_fourier(const SpinorField& fourier_field) const;

    /// In-place variants used by the time steppers; the field's space tag is
    /// updated. Cheaper than the copying forms for per-step transforms.
    void to_fourier_inplace(SpinorField& field) const;
    void from_fourier_inplace(SpinorField& field) const;

private:
    struct Impl;
    GridPtr grid_;
    std::unique_ptr<Impl> impl_;
};

} // namespace dirac
