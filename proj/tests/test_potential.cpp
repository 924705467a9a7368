#include <cmath>
#include <numbers>

#include "doctest.h"
#include "oracles.hpp"

#include "dirac/errors.hpp"
#include "dirac/potential.hpp"

using namespace dirac;
using oracle::throws_with;
constexpr double kPi = std::numbers::pi;

TEST_SUITE("potential") {

TEST_CASE("expression potential evaluates components") {
    PotentialSpec p = expression_potential(1.0, 1, "2/(2+cos(x))", "1/(2+cos(x))");
    REQUIRE(p.V);
    REQUIRE(p.A1);
    CHECK_FALSE(p.A2);
    CHECK(p.time_independent);
    CHECK(p.V(0.0, 0.0, 0.0) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(p.A1(kPi, 0.0, 0.0) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("empty strings mean zero components") {
    PotentialSpec p = expression_potential(0.5, 1, "", "");
    CHECK_FALSE(p.V);
    CHECK_FALSE(p.A1);
    CHECK_FALSE(p.has_coupling());

    PotentialSpec free_limit = expression_potential(0.0, 1, "1+x", "");
    CHECK_FALSE(free_limit.has_coupling()); // eps = 0 switches coupling off
}

TEST_CASE("time dependence is inferred") {
    CHECK(expression_potential(1.0, 1, "cos(x)", "").time_independent);
    CHECK_FALSE(expression_potential(1.0, 1, "cos(x)*sin(t)", "").time_independent);
}

TEST_CASE("dimension gating") {
    CHECK_THROWS_AS(expression_potential(1.0, 1, "y+1", ""), ConfigError);      // y in 1D
    CHECK_THROWS_AS(expression_potential(1.0, 1, "x", "x", "x"), ConfigError);  // A2 in 1D
    CHECK_NOTHROW(expression_potential(1.0, 2, "y+1", "", "x*y"));
    CHECK_THROWS_AS(expression_potential(1.5, 1, "x", ""), ConfigError);        // eps > 1
    CHECK_THROWS_AS(expression_potential(-0.1, 1, "x", ""), ConfigError);       // eps < 0
}

TEST_CASE("sampler caches time-independent potentials") {
    GridPtr g = make_grid_1d(0.0, 2.0 * kPi, 8);
    PotentialSampler s(g, expression_potential(1.0, 1, "2/(2+cos(x))", ""));
    const auto& first = s.at(0.0);
    const auto& again = s.at(17.5);
    CHECK(&first == &again); // same cached samples
    CHECK(first.V[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(first.A1.empty());
}

TEST_CASE("sampler resamples time-dependent potentials") {
    GridPtr g = make_grid_1d(0.0, 2.0 * kPi, 8);
    PotentialSampler s(g, expression_potential(1.0, 1, "t + cos(x)", ""));
    CHECK(s.at(0.0).V[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(s.at(2.0).V[0] == doctest::Approx(3.0).epsilon(1e-14));
}

TEST_CASE("non-finite samples are a configuration error") {
    GridPtr g = make_grid_1d(0.0, 2.0 * kPi, 8); // x = 0 is a node
    PotentialSampler s(g, expression_potential(1.0, 1, "1/x", ""));
    CHECK(throws_with<ConfigError>([&] { s.at(0.0); }, "finite"));
}

TEST_CASE("apply_G hand value: G = (2/3) I - (1/3) sigma1 on (1,1)") {
    GridPtr g = make_grid_1d(0.0, 2.0 * kPi, 4);
    PotentialSampler s(g, expression_potential(1.0, 1, "2/3", "1/3"));
    SpinorField u(g, Space::Real);
    for (std::size_t j = 0; j < u.size(); ++j) u.set(j, {cplx(1.0), cplx(1.0)});

    SpinorField gu = apply_G(s, 0.0, u);
    for (std::size_t j = 0; j < gu.size(); ++j) {
        CHECK(std::abs(gu.at(j).c0 - cplx(1.0 / 3.0)) < 1e-15);
        CHECK(std::abs(gu.at(j).c1 - cplx(1.0 / 3.0)) < 1e-15);
    }
}

TEST_CASE("apply_G matches the dense 2x2 matrix at every node (2d, all components)") {
    GridPtr g = make_grid_2d({0.0, 0.0}, {2.0, 2.0}, {4, 4});
    PotentialSpec spec = expression_potential(1.0, 2, "x+y", "x-y", "x*y+1");
    PotentialSampler s(g, spec);
    SpinorField u = oracle::random_field(g, Space::Real, 9);
    SpinorField gu = apply_G(s, 0.0, u);

    for (int iy = 0; iy < 4; ++iy)
        for (int ix = 0; ix < 4; ++ix) {
            const double x = g->node(0, ix), y = g->node(1, iy);
            const double v = x + y, a1 = x - y, a2 = x * y + 1;
            // G = V I - A1 sigma1 - A2 sigma2
            oracle::Mat2 m;
            m << cplx(v, 0.0), cplx(-a1, a2), cplx(-a1, -a2), cplx(v, 0.0);
            const std::size_t j = g->index(ix, iy);
            const oracle::Vec2 want = m * oracle::Vec2(u.at(j).c0, u.at(j).c1);
            CHECK(std::abs(gu.at(j).c0 - want(0)) < 1e-13);
            CHECK(std::abs(gu.at(j).c1 - want(1)) < 1e-13);
        }
}

TEST_CASE("apply_G is linear and rejects mismatched inputs") {
    GridPtr g = make_grid_1d(0.0, 1.0, 8);
    PotentialSampler s(g, expression_potential(1.0, 1, "cos(2*pi*x)", "1/2"));

    SpinorField a = oracle::random_field(g, Space::Real, 1);
    SpinorField b = oracle::random_field(g, Space::Real, 2);
    SpinorField combo = a;
    combo *= cplx(2.0, -0.5);
    combo += b;
    SpinorField lhs = apply_G(s, 0.0, combo);
    SpinorField rhs = apply_G(s, 0.0, a);
    rhs *= cplx(2.0, -0.5);
    rhs += apply_G(s, 0.0, b);
    CHECK(oracle::rel_l2(lhs, rhs) < 1e-14);

    SpinorField wrong_space(g, Space::Fourier);
    CHECK_THROWS_AS(apply_G(s, 0.0, wrong_space), ContractViolation);
    SpinorField wrong_grid(make_grid_1d(0.0, 1.0, 16), Space::Real);
    CHECK_THROWS_AS(apply_G(s, 0.0, wrong_grid), ContractViolation);
}

} // TEST_SUITE
