#include "dirac/grid.hpp"

#include <cmath>
#include <string>

#include "dirac/errors.hpp"

namespace dirac {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

void check_axis(double a, double b, int n, int axis) {
    const std::string ax = "axis " + std::to_string(axis);
    if (!std::isfinite(a) || !std::isfinite(b) || !(b > a)) {
        throw ConfigError("grid bounds on " + ax + " must be finite with b > a");
    }
    if (n < 4) {
        throw ConfigError("N must be >= 4 on " + ax + ", got " + std::to_string(n));
    }
    if (n % 2 != 0) {
        throw ConfigError("N must be even on " + ax + ", got " + std::to_string(n));
    }
}

std::vector<double> wavenumber_table(double a, double b, int n) {
    std::vector<double> mu(static_cast<std::size_t>(n));
    for (int bin = 0; bin < n; ++bin) {
        const int l = bin < n / 2 ? bin : bin - n;
        mu[bin] = 2.0 * kPi * l / (b - a);
    }
    return mu;
}

} // namespace

Grid Grid::make_1d(double a, double b, int n) {
    check_axis(a, b, n, 0);
    Grid g;
    g.dim_ = 1;
    g.n_ = {n, 1};
    g.lo_ = {a, 0.0};
    g.hi_ = {b, 0.0};
    g.h_ = {(b - a) / n, 0.0};
    g.total_ = static_cast<std::size_t>(n);
    g.mu_[0] = wavenumber_table(a, b, n);
    g.mu_[1] = {0.0};
    return g;
}

Grid Grid::make_2d(std::array<double, 2> lo, std::array<double, 2> hi,
                   std::array<int, 2> n) {
    check_axis(lo[0], hi[0], n[0], 0);
    check_axis(lo[1], hi[1], n[1], 1);
    Grid g;
    g.dim_ = 2;
    g.n_ = n;
    g.lo_ = lo;
    g.hi_ = hi;
    g.h_ = {(hi[0] - lo[0]) / n[0], (hi[1] - lo[1]) / n[1]};
    g.total_ = static_cast<std::size_t>(n[0]) * static_cast<std::size_t>(n[1]);
    g.mu_[0] = wavenumber_table(lo[0], hi[0], n[0]);
    g.mu_[1] = wavenumber_table(lo[1], hi[1], n[1]);
    return g;
}

double Grid::cell_volume() const {
    return dim_ == 1 ? h_[0] : h_[0] * h_[1];
}

double Grid::domain_volume() const {
    return dim_ == 1 ? length(0) : length(0) * length(1);
}

double Grid::max_delta() const {
    // |mu| is maximal at the Nyquist bin l = -N/2 on each axis.
    double mu2 = 0.0;
    for (int axis = 0; axis < dim_; ++axis) {
        const double mu_max = kPi * n_[axis] / length(axis);
        mu2 += mu_max * mu_max;
    }
    return std::sqrt(1.0 + mu2);
}

bool Grid::operator==(const Grid& other) const {
    return dim_ == other.dim_ && n_ == other.n_ && lo_ == other.lo_ &&
           hi_ == other.hi_;
}

GridPtr make_grid_1d(double a, double b, int n) {
    return std::make_shared<const Grid>(Grid::make_1d(a, b, n));
}

GridPtr make_grid_2d(std::array<double, 2> lo, std::array<double, 2> hi,
                     std::array<int, 2> n) {
    return std::make_shared<const Grid>(Grid::make_2d(lo, hi, n));
}

} // namespace dirac
