#pragma once

#include <array>
#include <cstddef>
#include <memory>
#include <vector>

namespace dirac {

/// Periodic uniform grid on (a, b) in 1D or the tensor product of two such
/// intervals in 2D.
///
/// Along each axis there are N nodes x_j = a + j*h, j = 0..N-1, with
/// h = (b-a)/N. The node x_N = b is identified with x_0 and never stored.
/// Fourier modes use the index set {-N/2, ..., N/2-1} with wavenumbers
/// mu_l = 2*pi*l/(b-a). Mode l lives in DFT bin (l mod N), so wavenumber
/// tables are stored in bin order and bin 0 always carries mu = 0.
class Grid {
public:
    static Grid make_1d(double a, double b, int n);
    static Grid make_2d(std::array<double, 2> lo, std::array<double, 2> hi,
                        std::array<int, 2> n);

    int dim() const { return dim_; }
    int points(int axis) const { return n_[axis]; }
    double lower(int axis) const { return lo_[axis]; }
    double upper(int axis) const { return hi_[axis]; }
    double length(int axis) const { return hi_[axis] - lo_[axis]; }
    double spacing(int axis) const { return h_[axis]; }

    /// Total number of nodes (N1 in 1D, N1*N2 in 2D).
    std::size_t size() const { return total_; }

    double node(int axis, int j) const { return lo_[axis] + j * h_[axis]; }

    /// Signed mode index l in {-N/2, .., N/2-1} for DFT bin k in {0, .., N-1}.
    int mode_of_bin(int axis, int bin) const {
        return bin < n_[axis] / 2 ? bin : bin - n_[axis];
    }
    double wavenumber(int axis, int bin) const { return mu_[axis][bin]; }
    const std::vector<double>& wavenumbers(int axis) const { return mu_[axis]; }

    /// Flat storage index; x runs fastest.
    std::size_t index(int ix, int iy = 0) const {
        return static_cast<std::size_t>(iy) * n_[0] + ix;
    }

    /// h (1D) or h1*h2 (2D); weight of one node in the discrete l2 norm.
    double cell_volume() const;
    /// (b-a) (1D) or product of lengths (2D); weight in the Fourier-side norm.
    double domain_volume() const;

    /// Largest delta_l = sqrt(1 + |mu_l|^2) over the mode set.
    double max_delta() const;

    bool operator==(const Grid& other) const;

private:
    Grid() = default;

    int dim_ = 1;
    std::array<int, 2> n_{0, 0};
    std::array<double, 2> lo_{0.0, 0.0};
    std::array<double, 2> hi_{0.0, 0.0};
    std::array<double, 2> h_{0.0, 0.0};
    std::size_t total_ = 0;
    std::array<std::vector<double>, 2> mu_;
};

using GridPtr = std::shared_ptr<const Grid>;

GridPtr make_grid_1d(double a, double b, int n);
GridPtr make_grid_2d(std::array<double, 2> lo, std::array<double, 2> hi,
                     std::array<int, 2> n);

} // namespace dirac
