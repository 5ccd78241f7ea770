#include <cmath>

#include "catch_amalgamated.hpp"

#include "aclandau/convergence.hpp"

using namespace aclandau;
using Catch::Matchers::WithinAbs;

TEST_CASE("exact power laws are recovered", "[convergence]") {
    const std::vector<double> h{0.4, 0.2, 0.1, 0.05};
    for (double p : {1.0, 2.0, 4.0}) {
        std::vector<double> err;
        for (double v : h) err.push_back(3.0 * std::pow(v, p));
        const auto fit = fit_order(h, err);
        CHECK_THAT(fit.order, WithinAbs(p, 1e-12));
        CHECK_THAT(fit.intercept, WithinAbs(std::log(3.0), 1e-12));
        CHECK_THAT(fit.r_squared, WithinAbs(1.0, 1e-12));
        CHECK(fit.monotone);
    }
}

TEST_CASE("non-monotone data is flagged", "[convergence]") {
    const auto fit = fit_order({0.25, 0.125, 0.0625}, {1e-2, 2e-2, 1e-3});
    CHECK_FALSE(fit.monotone);
    CHECK(fit.r_squared < 1.0);
}

TEST_CASE("invalid inputs", "[convergence]") {
    CHECK_THROWS_AS(fit_order({0.1, 0.2}, {1.0, 2.0}), ValidationError);
    CHECK_THROWS_AS(fit_order({0.1, 0.2, 0.3}, {1.0, 0.0, 2.0}), ValidationError);
    CHECK_THROWS_AS(fit_order({0.1, 0.1, 0.1}, {1.0, 2.0, 3.0}), ValidationError);
    CHECK_THROWS_AS(fit_order({0.1, 0.2, 0.3}, {1.0, 2.0}), ValidationError);
}
