#include "oracles.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace oracle {

dirac::SpinorField direct_to_fourier(const dirac::SpinorField& real_field) {
    const dirac::Grid& g = real_field.grid();
    dirac::SpinorField out(real_field.grid_ptr(), dirac::Space::Fourier);
    const double two_pi = 2.0 * std::numbers::pi;

    if (g.dim() == 1) {
        const int n = g.points(0);
        for (int c = 0; c < 2; ++c)
            for (int l = 0; l < n; ++l) {
                cplx acc = 0.0;
                for (int j = 0; j < n; ++j)
                    acc += real_field.component(c)[j] *
                           std::polar(1.0, -two_pi * j * l / static_cast<double>(n));
                out.component(c)[l] = acc / static_cast<double>(n);
            }
        return out;
    }

    const int n1 = g.points(0), n2 = g.points(1);
    for (int c = 0; c < 2; ++c)
        for (int l2 = 0; l2 < n2; ++l2)
            for (int l1 = 0; l1 < n1; ++l1) {
                cplx acc = 0.0;
                for (int j2 = 0; j2 < n2; ++j2)
                    for (int j1 = 0; j1 < n1; ++j1)
                        acc += real_field.component(c)[g.index(j1, j2)] *
                               std::polar(1.0, -two_pi * (static_cast<double>(j1) * l1 / n1 +
                                                          static_cast<double>(j2) * l2 / n2));
                out.component(c)[g.index(l1, l2)] = acc / static_cast<double>(n1 * n2);
            }
    return out;
}

Mat2 gamma_matrix(double mu1, double mu2) {
    Mat2 m;
    m << cplx(1.0, 0.0), cplx(mu1, -mu2), cplx(mu1, mu2), cplx(-1.0, 0.0);
    return m;
}

Mat2 function_of_hermitian(const Mat2& m, const std::function<cplx(double)>& f) {
    Eigen::SelfAdjointEigenSolver<Mat2> es(m);
    Eigen::Vector2cd fl;
    fl << f(es.eigenvalues()[0]), f(es.eigenvalues()[1]);
    return es.eigenvectors() * fl.asDiagonal() * es.eigenvectors().adjoint();
}

cplx f_exp_minus_i_tau(double tau, double lambda) { return std::polar(1.0, -tau * lambda); }

cplx f_sin_tau(double tau, double lambda) { return std::sin(tau * lambda); }

cplx f_inverse(double lambda) { return 1.0 / lambda; }

cplx f_q1(double tau, double lambda) {
    return cplx(0.0, -1.0) * (1.0 - std::polar(1.0, -tau * lambda)) / lambda;
}

cplx f_q2(double tau, double lambda) {
    return cplx(0.0, -tau / lambda) + (1.0 - std::polar(1.0, -tau * lambda)) / (lambda * lambda);
}

double spectral_radius(const Eigen::MatrixXcd& m) {
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(m, /*computeEigenvectors=*/false);
    double r = 0.0;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
        r = std::max(r, std::abs(es.eigenvalues()[i]));
    return r;
}

dirac::SpinorField random_field(dirac::GridPtr grid, dirac::Space space, unsigned seed) {
    dirac::SpinorField f(std::move(grid), space);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> dist(0.0, 1.0);
    for (int c = 0; c < 2; ++c)
        for (auto& v : f.component(c)) v = cplx(dist(rng), dist(rng));
    return f;
}

double rel_l2(const dirac::SpinorField& a, const dirac::SpinorField& b) {
    return dirac::l2_distance(a, b) / std::max(a.norm_l2(), 1e-300);
}

} // namespace oracle
