#pragma once

#include <complex>

namespace dirac {

using cplx = std::complex<double>;

/// One two-component value (phi1, phi2) at a single grid node or Fourier mode.
struct Spinor {
    cplx c0{};
    cplx c1{};

    friend Spinor operator+(Spinor a, Spinor b) { return {a.c0 + b.c0, a.c1 + b.c1}; }
    friend Spinor operator-(Spinor a, Spinor b) { return {a.c0 - b.c0, a.c1 - b.c1}; }
    friend Spinor operator*(cplx s, Spinor v) { return {s * v.c0, s * v.c1}; }

    double norm2() const { return std::norm(c0) + std::norm(c1); }
};

} // namespace dirac
