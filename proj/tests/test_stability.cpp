#include <cmath>
#include <cstdio>
#include <numbers>

#include "doctest.h"
#include "oracles.hpp"

#include "dirac/errors.hpp"
#include "dirac/presets.hpp"
#include "dirac/stability.hpp"

using namespace dirac;
using oracle::throws_with;
constexpr double kPi = std::numbers::pi;

TEST_SUITE("stability") {

TEST_CASE("method names round-trip and aliases parse") {
    CHECK(method_name(Method::EWI) == "ewi-fp");
    CHECK(method_name(Method::SEWI) == "sewi-fp");
    CHECK(method_name(Method::TSFP) == "tsfp");
    for (Method m : {Method::EWI, Method::SEWI, Method::TSFP})
        CHECK(method_from_name(method_name(m)) == m);
    CHECK(method_from_name("ewi") == Method::EWI);
    CHECK(method_from_name("sewi") == Method::SEWI);
    CHECK_THROWS_AS(method_from_name("rk4"), ConfigError);
}

TEST_CASE("sewi bound combines the free and potential constraints") {
    GridPtr g = make_grid_1d(0.0, 2.0 * kPi, 64); // delta_max = sqrt(1 + 32^2)
    const double delta_max = std::sqrt(1.0 + 32.0 * 32.0);
    const double free_bound = kPi / (3.0 * delta_max);
    const double c = 3.0;
    const double pot_bound = (2.0 - std::sqrt(3.0)) / (2.0 * c);
    const double bound = std::min(free_bound, pot_bound);

    GateResult ok = stability_gate(Method::SEWI, 0.9 * bound, *g, c);
    CHECK(ok.status == GateResult::Status::Ok);
    CHECK(ok.bound == doctest::Approx(bound).epsilon(1e-14));

    GateResult bad = stability_gate(Method::SEWI, 1.1 * bound, *g, c);
    CHECK(bad.status == GateResult::Status::Rejected);
    CHECK_FALSE(bad.ok());
    CHECK(bad.message.find("sewi stability bound violated") != std::string::npos);
    // The evaluated numeric bound appears in the message.
    char expect[64];
    std::snprintf(expect, sizeof expect, "%.12g", bound);
    CHECK(bad.message.find(expect) != std::string::npos);
}

TEST_CASE("on a coarse grid the potential constraint dominates: (2-sqrt(3))/(2C)") {
    GridPtr g = make_grid_1d(0.0, 2.0 * kPi, 4); // delta_max = sqrt(5), free bound ~0.468
    GateResult r = stability_gate(Method::SEWI, 0.4, *g, 3.0);
    CHECK(r.bound == doctest::Approx((2.0 - std::sqrt(3.0)) / 6.0).epsilon(1e-14));
    CHECK(r.status == GateResult::Status::Rejected);
}

TEST_CASE("C = 0 leaves only the free constraint") {
    GridPtr g = make_grid_1d(0.0, 2.0 * kPi, 4);
    GateResult r = stability_gate(Method::SEWI, 0.4, *g, 0.0);
    CHECK(r.bound == doctest::Approx(kPi / (3.0 * std::sqrt(5.0))).epsilon(1e-14));
    CHECK(r.status == GateResult::Status::Ok);
}

TEST_CASE("gate is evaluated on |tau|") {
    GridPtr g = make_grid_1d(0.0, 2.0 * kPi, 64);
    CHECK(stability_gate(Method::SEWI, -0.2, *g, 3.0).status == GateResult::Status::Rejected);
    CHECK(stability_gate(Method::SEWI, -0.001, *g, 3.0).status == GateResult::Status::Ok);
}

TEST_CASE("ewi warns above tau = 1; tsfp is unconditional") {
    GridPtr g = make_grid_1d(0.0, 2.0 * kPi, 64);
    CHECK(stability_gate(Method::EWI, 0.5, *g, 3.0).status == GateResult::Status::Ok);
    GateResult warn = stability_gate(Method::EWI, 1.5, *g, 3.0);
    CHECK(warn.status == GateResult::Status::Warning);
    CHECK(warn.ok()); // warning does not reject
    CHECK_FALSE(warn.message.empty());
    CHECK(stability_gate(Method::TSFP, 100.0, *g, 3.0).status == GateResult::Status::Ok);
}

TEST_CASE("potential_sup_sum: declared bounds win, sampling covers the rest") {
    GridPtr g = make_grid_1d(0.0, 2.0 * kPi, 16);
    // 1d scenario: max V = 2, max A1 = 1 (both attained at x = pi, a sample
    // node of the 4x refined grid).
    PotentialSpec sampled = preset_1d_convergence().make_potential(1.0);
    CHECK(potential_sup_sum(sampled, *g, 1.0) == doctest::Approx(3.0).epsilon(1e-12));

    PotentialSpec declared = sampled;
    declared.sup_V = 7.0;
    declared.sup_A1 = 2.0;
    CHECK(potential_sup_sum(declared, *g, 1.0) == doctest::Approx(9.0).epsilon(1e-15));

    PotentialSpec none = expression_potential(1.0, 1, "", "");
    CHECK(potential_sup_sum(none, *g, 1.0) == 0.0);
}

TEST_CASE("invalid gate inputs") {
    GridPtr g = make_grid_1d(0.0, 2.0 * kPi, 8);
    CHECK_THROWS_AS(stability_gate(Method::SEWI, 0.0, *g, 1.0), ConfigError);
    CHECK_THROWS_AS(stability_gate(Method::SEWI, 0.01, *g, -1.0), ConfigError);

    PotentialSpec bad_bound = expression_potential(1.0, 1, "x", "");
    bad_bound.sup_V = -2.0;
    CHECK_THROWS_AS(potential_sup_sum(bad_bound, *g, 1.0), ConfigError);
}

} // TEST_SUITE
