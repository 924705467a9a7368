#include <cmath>
#include <numbers>

#include "doctest.h"
#include "oracles.hpp"

#include "dirac/errors.hpp"
#include "dirac/grid.hpp"

using namespace dirac;
constexpr double kPi = std::numbers::pi;

TEST_SUITE("grid") {

TEST_CASE("1d nodes and spacing") {
    GridPtr g = make_grid_1d(0.0, 2.0 * kPi, 8);
    CHECK(g->dim() == 1);
    CHECK(g->points(0) == 8);
    CHECK(g->size() == 8);
    CHECK(g->spacing(0) == doctest::Approx(kPi / 4).epsilon(1e-15));
    CHECK(g->node(0, 0) == 0.0);
    CHECK(g->node(0, 3) == doctest::Approx(3.0 * kPi / 4).epsilon(1e-15));
    CHECK(g->cell_volume() == doctest::Approx(kPi / 4).epsilon(1e-15));
    CHECK(g->domain_volume() == doctest::Approx(2.0 * kPi).epsilon(1e-15));
}

TEST_CASE("mode set is {-N/2..N/2-1} in bin order l mod N") {
    GridPtr g = make_grid_1d(0.0, 2.0 * kPi, 8);
    const int expected[8] = {0, 1, 2, 3, -4, -3, -2, -1};
    for (int bin = 0; bin < 8; ++bin) {
        CHECK(g->mode_of_bin(0, bin) == expected[bin]);
        // length 2*pi makes mu_l = l exactly
        CHECK(g->wavenumber(0, bin) == doctest::Approx(expected[bin]).epsilon(1e-15));
    }
    CHECK(g->wavenumbers(0).size() == 8);
}

TEST_CASE("wavenumbers scale as 2*pi/(b-a)") {
    GridPtr g = make_grid_1d(-1.0, 3.0, 6); // length 4
    for (int bin = 0; bin < 6; ++bin)
        CHECK(g->wavenumber(0, bin) ==
              doctest::Approx(2.0 * kPi * g->mode_of_bin(0, bin) / 4.0).epsilon(1e-15));
}

TEST_CASE("2d layout: x fastest, per-axis data independent") {
    GridPtr g = make_grid_2d({0.0, -1.0}, {2.0, 1.0}, {8, 4});
    CHECK(g->dim() == 2);
    CHECK(g->size() == 32);
    CHECK(g->index(3, 2) == 2 * 8 + 3);
    CHECK(g->spacing(0) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(g->spacing(1) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(g->cell_volume() == doctest::Approx(0.125).epsilon(1e-15));
    CHECK(g->domain_volume() == doctest::Approx(4.0).epsilon(1e-15));
    CHECK(g->node(1, 3) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("max_delta is sqrt(1 + mu_max^2) over the mode set") {
    GridPtr g = make_grid_1d(0.0, 2.0 * kPi, 64); // modes -32..31 -> |mu|max = 32
    CHECK(g->max_delta() == doctest::Approx(std::sqrt(1.0 + 32.0 * 32.0)).epsilon(1e-14));

    GridPtr g2 = make_grid_2d({0.0, 0.0}, {2.0 * kPi, 2.0 * kPi}, {8, 8});
    CHECK(g2->max_delta() == doctest::Approx(std::sqrt(1.0 + 16.0 + 16.0)).epsilon(1e-14));
}

TEST_CASE("equality compares geometry") {
    CHECK(*make_grid_1d(0.0, 1.0, 8) == *make_grid_1d(0.0, 1.0, 8));
    CHECK_FALSE(*make_grid_1d(0.0, 1.0, 8) == *make_grid_1d(0.0, 1.0, 16));
    CHECK_FALSE(*make_grid_1d(0.0, 1.0, 8) == *make_grid_1d(0.0, 2.0, 8));
}

TEST_CASE("invalid construction is rejected") {
    CHECK_THROWS_AS(make_grid_1d(0.0, 1.0, 7), ConfigError);   // odd
    CHECK_THROWS_AS(make_grid_1d(0.0, 1.0, 2), ConfigError);   // too small
    CHECK_THROWS_AS(make_grid_1d(1.0, 1.0, 8), ConfigError);   // empty interval
    CHECK_THROWS_AS(make_grid_1d(2.0, 1.0, 8), ConfigError);   // reversed
    CHECK_THROWS_AS(make_grid_2d({0.0, 0.0}, {1.0, 1.0}, {8, 6 + 1}), ConfigError);
}

} // TEST_SUITE
