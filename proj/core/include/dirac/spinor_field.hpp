#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "dirac/grid.hpp"
#include "dirac/spinor.hpp"

namespace dirac {

enum class Space { Real, Fourier };

/// Two-component complex field on a periodic grid, stored as one contiguous
/// array per spinor component (structure of arrays). In real space entry j
/// holds Phi(x_j); in Fourier space entry k holds the coefficient of mode
/// l = mode_of_bin(k) with the normalization
///   Phi_tilde_l = (1/N) sum_j Phi_j e^{-2*pi*i*j*l/N}   (per axis in 2D).
class SpinorField {
public:
    SpinorField(GridPtr grid, Space space);

    /// Sample initial data phi(x) (1D) or phi(x, y) (2D) on the grid nodes.
    static SpinorField sample(
        GridPtr grid,
        const std::function<cplx(double, double)>& phi1,
        const std::function<cplx(double, double)>& phi2);

    const Grid& grid() const { return *grid_; }
    const GridPtr& grid_ptr() const { return grid_; }
    Space space() const { return space_; }
    std::size_t size() const { return comp_[0].size(); }

    std::vector<cplx>& component(int c) { return comp_[c]; }
    const std::vector<cplx>& component(int c) const { return comp_[c]; }

    Spinor at(std::size_t i) const { return {comp_[0][i], comp_[1][i]}; }
    void set(std::size_t i, Spinor v) {
        comp_[0][i] = v.c0;
        comp_[1][i] = v.c1;
    }

    /// Discrete l2 norm: sqrt(h^d sum_j |Phi_j|^2) in real space,
    /// sqrt(prod(b-a) sum_l |Phi_tilde_l|^2) in Fourier space. By the
    /// discrete Parseval identity the two agree across a transform.
    double norm_l2() const;

    void fill_zero();

    SpinorField& operator+=(const SpinorField& other);
    SpinorField& operator-=(const SpinorField& other);
    SpinorField& operator*=(cplx scale);

private:
    friend class FourierTransform;

    GridPtr grid_;
    Space space_;
    std::vector<cplx> comp_[2];
};

/// sqrt of the h-weighted (real) or (b-a)-weighted (Fourier) sum of
/// |a_i - b_i|^2; both fields must live on the same grid and space.
double l2_distance(const SpinorField& a, const SpinorField& b);

} // namespace dirac
