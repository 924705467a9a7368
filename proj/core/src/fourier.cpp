#include "dirac/fourier.hpp"

#include <fftw3.h>

#include <mutex>

#include "dirac/errors.hpp"

namespace dirac {

namespace {
// FFTW's planner is not thread-safe; plan execution is.
std::mutex planner_mutex;
} // namespace

struct FourierTransform::Impl {
    fftw_plan forward = nullptr;
    fftw_plan backward = nullptr;

    ~Impl() {
        std::lock_guard<std::mutex> lock(planner_mutex);
        if (forward) fftw_destroy_plan(forward);
        if (backward) fftw_destroy_plan(backward);
    }
};

FourierTransform::FourierTransform(GridPtr grid)
    : grid_(std::move(grid)), impl_(std::make_unique<Impl>()) {
    // Plan on a scratch buffer; FFTW_UNALIGNED lets the same plan run on any
    // caller array, and FFTW_ESTIMATE keeps planning deterministic.
    std::vector<cplx> scratch(grid_->size());
    auto* p = reinterpret_cast<fftw_complex*>(scratch.data());
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;

    std::lock_guard<std::mutex> lock(planner_mutex);
    if (grid_->dim() == 1) {
        const int n = grid_->points(0);
        impl_->forward = fftw_plan_dft_1d(n, p, p, FFTW_FORWARD, flags);
        impl_->backward = fftw_plan_dft_1d(n, p, p, FFTW_BACKWARD, flags);
    } else {
        // Storage is x-fastest, so x is FFTW's last (contiguous) dimension.
        const int n0 = grid_->points(1);
        const int n1 = grid_->points(0);
        impl_->forward = fftw_plan_dft_2d(n0, n1, p, p, FFTW_FORWARD, flags);
        impl_->backward = fftw_plan_dft_2d(n0, n1, p, p, FFTW_BACKWARD, flags);
    }
    if (!impl_->forward || !impl_->backward) {
        throw ConfigError("FFTW plan creation failed");
    }
}

FourierTransform::~FourierTransform() = default;

void FourierTransform::to_fourier_inplace(SpinorField& field) const {
    if (field.space() != Space::Real) {
        throw ContractViolation("to_fourier expects a real-space field");
    }
    if (!(field.grid() == *grid_)) {
        throw ContractViolation("field grid does not match transform grid");
    }
    const double scale = 1.0 / static_cast<double>(grid_->size());
    for (int c = 0; c < 2; ++c) {
        auto* p = reinterpret_cast<fftw_complex*>(field.component(c).data());
        fftw_execute_dft(impl_->forward, p, p);
        for (auto& v : field.component(c)) v *= scale;
    }
    field.space_ = Space::Fourier;
}

void FourierTransform::from_fourier_inplace(SpinorField& field) const {
    if (field.space() != Space::Fourier) {
        throw ContractViolation("from_fourier expects a Fourier-space field");
    }
    if (!(field.grid() == *grid_)) {
        throw ContractViolation("field grid does not match transform grid");
    }
    for (int c = 0; c < 2; ++c) {
        auto* p = reinterpret_cast<fftw_complex*>(field.component(c).data());
        fftw_execute_dft(impl_->backward, p, p);
    }
    field.space_ = Space::Real;
}

SpinorField FourierTransform::to_fourier(const SpinorField& real_field) const {
    SpinorField copy = real_field;
    to_fourier_inplace(copy);
    return copy;
}

SpinorField FourierTransform::from_fourier(const SpinorField& fourier_field) const {
    SpinorField copy = fourier_field;
    from_fourier_inplace(copy);
    return copy;
}

} // namespace dirac
