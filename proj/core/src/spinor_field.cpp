#include "dirac/spinor_field.hpp"

#include <cmath>

#include "dirac/errors.hpp"

namespace dirac {

SpinorField::SpinorField(GridPtr grid, Space space)
    : grid_(std::move(grid)), space_(space) {
    comp_[0].assign(grid_->size(), cplx{});
    comp_[1].assign(grid_->size(), cplx{});
}

SpinorField SpinorField::sample(
    GridPtr grid,
    const std::function<cplx(double, double)>& phi1,
    const std::function<cplx(double, double)>& phi2) {
    SpinorField f(grid, Space::Real);
    const Grid& g = f.grid();
    if (g.dim() == 1) {
        for (int j = 0; j < g.points(0); ++j) {
            const double x = g.node(0, j);
            f.comp_[0][j] = phi1(x, 0.0);
            f.comp_[1][j] = phi2(x, 0.0);
        }
    } else {
        for (int iy = 0; iy < g.points(1); ++iy) {
            const double y = g.node(1, iy);
            for (int ix = 0; ix < g.points(0); ++ix) {
                const double x = g.node(0, ix);
                const std::size_t i = g.index(ix, iy);
                f.comp_[0][i] = phi1(x, y);
                f.comp_[1][i] = phi2(x, y);
            }
        }
    }
    return f;
}

double SpinorField::norm_l2() const {
    long double acc = 0.0L;
    for (const auto& c : comp_) {
        for (const cplx& v : c) acc += (long double)std::norm(v);
    }
    const double weight =
        space_ == Space::Real ? grid_->cell_volume() : grid_->domain_volume();
    return std::sqrt((double)(acc * weight));
}

void SpinorField::fill_zero() {
    for (auto& c : comp_) std::fill(c.begin(), c.end(), cplx{});
}

namespace {
void check_compatible(const SpinorField& a, const SpinorField& b) {
    if (!(a.grid() == b.grid()) || a.space() != b.space()) {
        throw ContractViolation("spinor fields live on different grids or spaces");
    }
}
} // namespace

SpinorField& SpinorField::operator+=(const SpinorField& other) {
    check_compatible(*this, other);
    for (int c = 0; c < 2; ++c) {
        for (std::size_t i = 0; i < comp_[c].size(); ++i) {
            comp_[c][i] += other.comp_[c][i];
        }
    }
    return *this;
}

SpinorField& SpinorField::operator-=(const SpinorField& other) {
    check_compatible(*this, other);
    for (int c = 0; c < 2; ++c) {
        for (std::size_t i = 0; i < comp_[c].size(); ++i) {
            comp_[c][i] -= other.comp_[c][i];
        }
    }
    return *this;
}

SpinorField& SpinorField::operator*=(cplx scale) {
    for (auto& c : comp_) {
        for (auto& v : c) v *= scale;
    }
    return *this;
}

double l2_distance(const SpinorField& a, const SpinorField& b) {
    check_compatible(a, b);
    long double acc = 0.0L;
    for (int c = 0; c < 2; ++c) {
        const auto& ac = a.component(c);
        const auto& bc = b.component(c);
        for (std::size_t i = 0; i < ac.size(); ++i) {
            acc += (long double)std::norm(ac[i] - bc[i]);
        }
    }
    const double weight = a.space() == Space::Real ? a.grid().cell_volume()
                                                   : a.grid().domain_volume();
    return std::sqrt((double)(acc * weight));
}

} // namespace dirac
