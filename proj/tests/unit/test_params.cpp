#include <cmath>
#include <random>

#include "catch_amalgamated.hpp"

#include "aclandau/params.hpp"

using namespace aclandau;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

PhysicalParams unit_params(double mu, double rho0) {
    PhysicalParams p;
    p.magnetic_moment = mu;
    p.charge_density = rho0;
    return p;
}

}  // namespace

TEST_CASE("derive_units: positive coupling", "[params]") {
    const auto u = derive_units(unit_params(1.0, 2.0));
    CHECK(u.omega == 2.0);
    CHECK(u.sigma == 1);
    CHECK_THAT(u.magnetic_length, WithinRel(1.0 / std::sqrt(2.0), 1e-15));
    CHECK(u.energy_quantum == 2.0);
}

TEST_CASE("derive_units: flipping mu flips sigma only", "[params]") {
    const auto u = derive_units(unit_params(-1.0, 2.0));
    CHECK(u.omega == -2.0);
    CHECK(u.sigma == -1);
    CHECK_THAT(u.magnetic_length, WithinRel(1.0 / std::sqrt(2.0), 1e-15));
}

TEST_CASE("derive_units: zero coupling is refused", "[params]") {
    CHECK_THROWS_AS(derive_units(unit_params(1.0, 0.0)), DegenerateCoupling);
    CHECK_THROWS_AS(derive_units(unit_params(0.0, 3.0)), DegenerateCoupling);
}

TEST_CASE("validate rejects non-positive constants", "[params]") {
    auto p = unit_params(1.0, 1.0);
    p.mass = 0.0;
    CHECK_THROWS_AS(derive_units(p), ValidationError);
    p = unit_params(1.0, 1.0);
    p.epsilon0 = -1.0;
    CHECK_THROWS_AS(p.validate(), ValidationError);
    p = unit_params(1.0, 1.0);
    p.hbar = std::nan("");
    CHECK_THROWS_AS(p.validate(), ValidationError);
    p = unit_params(INFINITY, 1.0);
    CHECK_THROWS_AS(p.validate(), ValidationError);
}

TEST_CASE("simulation units: coupling is sigma and scalar term is sigma / 2", "[params]") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> mag(-6.0, 6.0);
    for (int trial = 0; trial < 200; ++trial) {
        PhysicalParams p;
        p.mass = std::pow(10.0, mag(rng));
        p.magnetic_moment = (trial % 2 ? -1.0 : 1.0) * std::pow(10.0, mag(rng));
        p.charge_density = (trial % 3 ? 1.0 : -1.0) * std::pow(10.0, mag(rng));
        p.epsilon0 = std::pow(10.0, mag(rng));
        p.light_speed = std::pow(10.0, mag(rng) / 3);
        p.hbar = std::pow(10.0, mag(rng));
        const SimulationScales s = nondimensionalize(p);
        CHECK_THAT(s.coupling(), WithinAbs(s.sigma(), 1e-12));
        CHECK_THAT(s.scalar_term(), WithinAbs(0.5 * s.sigma(), 1e-12));
        // l^2 |omega| m = hbar
        CHECK_THAT(s.length() * s.length() * std::abs(s.units().omega) * p.mass, WithinRel(p.hbar, 1e-13));
    }
}

TEST_CASE("rescaling mu -> t mu, rho0 -> rho0 / t leaves derived units unchanged", "[params]") {
    PhysicalParams p = unit_params(0.7, -3.1);
    p.mass = 2.5;
    p.light_speed = 3.0;
    const auto u = derive_units(p);
    for (double t : {1e-3, 0.5, 2.0, 1e4}) {
        PhysicalParams q = p;
        q.magnetic_moment *= t;
        q.charge_density /= t;
        const auto v = derive_units(q);
        CHECK_THAT(v.omega, WithinRel(u.omega, 1e-14));
        CHECK(v.sigma == u.sigma);
        CHECK_THAT(v.magnetic_length, WithinRel(u.magnetic_length, 1e-14));
    }
}

TEST_CASE("energy and length round trips", "[params]") {
    PhysicalParams p;
    p.mass = 1.6e-27;
    p.magnetic_moment = 9.3e-24;
    p.charge_density = 1e5;
    p.epsilon0 = 8.854e-12;
    p.light_speed = 2.998e8;
    p.hbar = 1.054571817e-34;
    const SimulationScales s(p);
    for (double e : {0.0, 0.5, 1.0, 2.75, 1e3}) {
        CHECK_THAT(s.to_dimensionless_energy(s.to_joules(e)), WithinAbs(e, 1e-14 * std::max(1.0, e)));
        CHECK_THAT(s.to_dimensionless_length(s.to_metres(e)), WithinAbs(e, 1e-14 * std::max(1.0, e)));
    }
    CHECK_THAT(s.momentum() * s.length(), WithinRel(p.hbar, 1e-15));
}

TEST_CASE("closed-form levels depend on sigma", "[params]") {
    CHECK(ac_level(0, -1) == 0.0);
    CHECK(ac_level(2, -1) == 2.0);
    CHECK(ac_level(0, 1) == 1.0);
    CHECK(ac_level(2, 1) == 3.0);
    for (int nu = 0; nu < 10; ++nu) CHECK(ac_level(nu, 1) - ac_level(nu, -1) == 1.0);
}
