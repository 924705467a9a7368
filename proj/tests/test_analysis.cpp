#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"

#include "dirac/analysis.hpp"
#include "dirac/errors.hpp"
#include "dirac/presets.hpp"

using namespace dirac;
constexpr double kPi = std::numbers::pi;

TEST_SUITE("analysis") {

TEST_CASE("l2_error on a shared grid is the weighted euclidean distance") {
    GridPtr g = make_grid_1d(0.0, 2.0, 4); // h = 0.5
    SpinorField a(g, Space::Real), b(g, Space::Real);
    a.fill_zero();
    b.fill_zero();
    a.set(0, {cplx(1.0), cplx(0.0)});
    b.set(0, {cplx(0.0), cplx(0.0)});
    a.set(2, {cplx(0.0), cplx(2.0)});
    b.set(2, {cplx(0.0), cplx(0.0)});
    // sqrt(0.5 * (1 + 4)) = sqrt(2.5)
    CHECK(l2_error(a, b) == doctest::Approx(std::sqrt(2.5)).epsilon(1e-15));
}

TEST_CASE("l2_error subsets a nested finer reference at shared nodes") {
    auto f1 = [](double x, double) { return cplx(std::sin(x), std::cos(2 * x)); };
    auto f2 = [](double x, double) { return cplx(x * 0.1, -0.3); };
    GridPtr coarse = make_grid_1d(0.0, 2.0 * kPi, 8);
    GridPtr fine = make_grid_1d(0.0, 2.0 * kPi, 32);

    SpinorField uc = SpinorField::sample(coarse, f1, f2);
    SpinorField uf = SpinorField::sample(fine, f1, f2);
    CHECK(l2_error(uc, uf) < 1e-14); // same function at coincident nodes

    // 2d: both axes refined by different factors.
    GridPtr c2 = make_grid_2d({0.0, 0.0}, {2.0, 4.0}, {4, 4});
    GridPtr f2d = make_grid_2d({0.0, 0.0}, {2.0, 4.0}, {8, 16});
    auto g1 = [](double x, double y) { return cplx(x + y, x * y); };
    auto g2 = [](double x, double y) { return cplx(x - y, 1.0); };
    CHECK(l2_error(SpinorField::sample(c2, g1, g2), SpinorField::sample(f2d, g1, g2)) < 1e-14);
}

TEST_CASE("l2_error rejects non-nested or mismatched grids") {
    SpinorField a(make_grid_1d(0.0, 1.0, 12), Space::Real);
    SpinorField b(make_grid_1d(0.0, 1.0, 8), Space::Real);
    CHECK_THROWS_AS(l2_error(a, b), ConfigError); // 8 not a multiple of 12

    SpinorField c(make_grid_1d(0.0, 2.0, 24), Space::Real);
    CHECK_THROWS_AS(l2_error(a, c), ConfigError); // different domains
}

TEST_CASE("horizon resolution") {
    CHECK(Horizon::final_time(2.0).resolve(0.125) == 2.0);
    CHECK(Horizon::t0_over_eps(2.0).resolve(0.125) == doctest::Approx(16.0).epsilon(1e-15));
    CHECK_THROWS_AS(Horizon::t0_over_eps(2.0).resolve(0.0), ConfigError);
    CHECK_THROWS_AS(Horizon::final_time(-1.0).resolve(1.0), ConfigError);
}

TEST_CASE("fit_order recovers synthetic slopes") {
    std::vector<double> h = {0.4, 0.2, 0.1, 0.05};
    std::vector<double> e2, e4;
    for (double hv : h) {
        e2.push_back(3.0 * hv * hv);
        e4.push_back(0.7 * std::pow(hv, 4.1));
    }
    OrderFit f2 = fit_order(h, e2);
    REQUIRE(f2.valid);
    CHECK(f2.order == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(f2.residual < 1e-12);
    CHECK(f2.points_used == 4);

    OrderFit f4 = fit_order(h, e4);
    CHECK(f4.order == doctest::Approx(4.1).epsilon(1e-10));
}

TEST_CASE("fit_order excludes the roundoff floor and demands span") {
    std::vector<double> h = {0.4, 0.2, 0.1, 0.05, 0.025};
    std::vector<double> e = {3.0 * 0.4 * 0.4, 3.0 * 0.2 * 0.2, 3.0 * 0.1 * 0.1, 5e-14, 8e-15};
    OrderFit f = fit_order(h, e);
    REQUIRE(f.valid);
    CHECK(f.points_used == 3); // two floor points dropped
    CHECK(f.order == doctest::Approx(2.0).epsilon(1e-10));

    // Only two clean points -> invalid.
    std::vector<double> h2 = {0.4, 0.2, 0.1};
    std::vector<double> e2 = {1e-3, 2.5e-4, 1e-14};
    CHECK_FALSE(fit_order(h2, e2).valid);

    // 2x span is not enough evidence for a slope.
    std::vector<double> h3 = {0.4, 0.3, 0.2};
    std::vector<double> e3 = {1e-3, 6e-4, 2.5e-4};
    CHECK_FALSE(fit_order(h3, e3).valid);
}

TEST_CASE("detect_breakpoint finds a linear-to-exponential transition") {
    // u(t) = 0.01 t for t <= 20, then exponential continuation.
    std::vector<double> times, errors;
    const double tstar = 20.0, slope = 0.01, rate = 0.12;
    for (int k = 0; k <= 40; ++k) {
        const double t = k;
        times.push_back(t);
        errors.push_back(t <= tstar ? slope * t
                                    : slope * tstar * std::exp(rate * (t - tstar)));
    }
    BreakpointFit fit = detect_breakpoint(times, errors);
    REQUIRE(fit.defined);
    CHECK(std::abs(fit.tstar - tstar) <= 2.0);

    // Scale invariance: multiplying all errors by 1e-6 moves nothing.
    std::vector<double> scaled = errors;
    for (double& e : scaled) e *= 1e-6;
    BreakpointFit fit2 = detect_breakpoint(times, scaled);
    REQUIRE(fit2.defined);
    CHECK(fit2.index == fit.index);
}

TEST_CASE("detect_breakpoint degrades gracefully") {
    std::vector<double> t = {0, 1, 2, 3};
    std::vector<double> e = {1e-15, 2e-15, 1e-15, 3e-15};
    BreakpointFit shallow = detect_breakpoint(t, e);
    CHECK_FALSE(shallow.defined); // too few samples and at roundoff floor
    CHECK_FALSE(shallow.note.empty());
}

TEST_CASE("density computes rho and mass") {
    GridPtr g = make_grid_1d(0.0, 2.0, 4); // h = 0.5
    SpinorField u(g, Space::Real);
    u.fill_zero();
    u.set(0, {cplx(1.0, 1.0), cplx(0.0)});   // rho = 2
    u.set(1, {cplx(0.0), cplx(0.0, 3.0)});   // rho = 9
    DensityField d = density(u);
    CHECK(d.rho[0] == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(d.rho[1] == doctest::Approx(9.0).epsilon(1e-15));
    CHECK(d.rho[2] == 0.0);
    CHECK(d.mass == doctest::Approx(0.5 * 11.0).epsilon(1e-15));

    SpinorField wrong(g, Space::Fourier);
    CHECK_THROWS_AS(density(wrong), ContractViolation);
}

TEST_CASE("temporal sweep on the 1d scenario shows second order and fits") {
    const ScenarioPreset& p = preset_1d_convergence();
    ErrorReport r = temporal_sweep(Method::SEWI, p, {1.0}, {0.02, 0.01, 0.005}, kPi / 16,
                                   Horizon::final_time(0.5), 1e-4, /*jobs=*/2);
    CHECK(r.axis == "tau");
    REQUIRE(r.cells.size() == 3);
    REQUIRE(r.fits.size() == 1);
    REQUIRE(r.fits[0].fit.valid);
    CHECK(r.fits[0].fit.order == doctest::Approx(2.0).epsilon(0.1));
    CHECK(std::isnan(r.uniformity_ratio)); // single eps
    for (const SweepCell& c : r.cells) {
        CHECK_FALSE(c.rejected);
        CHECK(c.n_points == 32);
        CHECK(c.t_final == doctest::Approx(0.5).epsilon(1e-12));
    }
}

TEST_CASE("sweep results are independent of the job count") {
    const ScenarioPreset& p = preset_1d_convergence();
    ErrorReport serial = temporal_sweep(Method::EWI, p, {1.0, 0.5}, {0.02, 0.01}, kPi / 8,
                                        Horizon::final_time(0.5), 1e-3, 1);
    ErrorReport parallel = temporal_sweep(Method::EWI, p, {1.0, 0.5}, {0.02, 0.01}, kPi / 8,
                                          Horizon::final_time(0.5), 1e-3, 8);
    REQUIRE(serial.cells.size() == parallel.cells.size());
    for (std::size_t i = 0; i < serial.cells.size(); ++i) {
        CHECK(serial.cells[i].error == parallel.cells[i].error); // bitwise equal
        CHECK(serial.cells[i].eps == parallel.cells[i].eps);
        CHECK(serial.cells[i].tau == parallel.cells[i].tau);
    }
    CHECK(serial.uniformity_ratio == parallel.uniformity_ratio);
}

TEST_CASE("spatial sweep validates its inputs") {
    const ScenarioPreset& p = preset_1d_convergence();
    // h that does not divide the domain into an even point count
    CHECK_THROWS_AS(spatial_sweep(Method::EWI, p, {1.0}, {1.0}, 1e-3,
                                  Horizon::final_time(0.5), {kPi / 32, 1e-4}),
                    ConfigError);
    // tau that does not divide the horizon
    CHECK_THROWS_AS(temporal_sweep(Method::EWI, p, {1.0}, {0.3}, kPi / 8,
                                   Horizon::final_time(1.0), 1e-3),
                    ConfigError);
}

TEST_CASE("growth_profile runs and records the trajectory") {
    const ScenarioPreset& p = preset_1d_convergence();
    GrowthProfile gp = growth_profile(Method::SEWI, p, 1.0, kPi / 8, 0.01, /*horizon=*/2.0,
                                      /*sample_stride=*/20, /*ref_substeps=*/10);
    REQUIRE(gp.times.size() == gp.errors.size());
    CHECK(gp.times.front() == 0.0);
    CHECK(gp.times.back() == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(gp.errors.front() == 0.0);
    CHECK(gp.errors.back() > 0.0);
    CHECK(gp.errors.back() < 1e-2);

    CHECK_THROWS_AS(growth_profile(Method::SEWI, p, 1.0, kPi / 8, 0.01, 2.0, 20, 5),
                    ConfigError); // reference must be at least 10x finer
}

} // TEST_SUITE
