#include <cmath>
#include <random>

#include "catch_amalgamated.hpp"

#include "aclandau/fields.hpp"
#include "aclandau/oracles.hpp"

using namespace aclandau;
using Catch::Matchers::WithinAbs;

namespace {

const GaugeFunction half_xy{Polynomial2{{{1, 1}, 0.5}}};

GaugeFunction random_harmonic(std::mt19937_64& rng) {
    // real parts of c_k z^k, k <= 4, plus imaginary parts: all harmonic
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Polynomial2 p = Polynomial2::constant(u(rng));
    const double a1 = u(rng), b1 = u(rng), a2 = u(rng), b2 = u(rng), a3 = u(rng), a4 = u(rng);
    p += a1 * Polynomial2::x() + b1 * Polynomial2::y();
    p += a2 * Polynomial2{{{2, 0}, 1.0}, {{0, 2}, -1.0}} + b2 * Polynomial2{{{1, 1}, 2.0}};
    p += a3 * Polynomial2{{{3, 0}, 1.0}, {{1, 2}, -3.0}};
    p += a4 * Polynomial2{{{4, 0}, 1.0}, {{2, 2}, -6.0}, {{0, 4}, 1.0}};
    return GaugeFunction(p);
}

}  // namespace

TEST_CASE("polynomial algebra", "[fields][polynomial]") {
    const Polynomial2 p{{{2, 1}, 3.0}, {{0, 0}, -1.0}};
    CHECK(p(2.0, 3.0) == 35.0);
    CHECK(p.degree() == 3);
    CHECK(p.dx() == Polynomial2{{{1, 1}, 6.0}});
    CHECK(p.dy() == Polynomial2{{{2, 0}, 3.0}});
    CHECK(p.laplacian() == Polynomial2{{{0, 1}, 6.0}});
    CHECK((p - p).is_zero());
    CHECK((Polynomial2::x() * Polynomial2::y()) == Polynomial2{{{1, 1}, 1.0}});
    CHECK(Polynomial2{}.degree() == -1);
}

TEST_CASE("evaluate_field examples", "[fields]") {
    const auto sym = FieldConfig::symmetric(-1);
    CHECK(evaluate_field(sym, 0.0, 0.0) == Vec2{0.0, 0.0});
    CHECK(evaluate_field(sym, 1.0, 2.0) == Vec2{0.5, 1.0});
    CHECK(evaluate_field(FieldConfig::plate(1), 3.0, -2.0) == Vec2{3.0, 0.0});
    const auto gt = gauge_transform(FieldConfig::plate(1), half_xy);
    CHECK(evaluate_field(gt, 1.0, 2.0) == Vec2{1.5, -1.0});
    CHECK_THROWS_AS(evaluate_field(FieldConfig::free(), 0.0, 0.0), UnsupportedKind);
    CHECK_THROWS_AS(evaluate_field(FieldConfig::standard_landau(1), 0.0, 0.0), UnsupportedKind);
}

TEST_CASE("vector_potential examples", "[fields]") {
    CHECK(vector_potential(FieldConfig::symmetric(1), 1.0, 2.0) == Vec2{-1.0, 0.5});
    CHECK(vector_potential(FieldConfig::plate(1), 0.3, -7.0) == Vec2{0.0, 0.3});
    CHECK(vector_potential(FieldConfig::free(), 2.0, 2.0) == Vec2{0.0, 0.0});
    CHECK(vector_potential(FieldConfig::standard_landau(-1), 1.0, 2.0) == Vec2{-1.0, 0.5});
    CHECK(FieldConfig::standard_landau(-1).coupling == -1.0);
    CHECK(FieldConfig::standard_landau(1).scalar.is_zero());
    CHECK(FieldConfig::free().scalar.is_zero());
    CHECK(FieldConfig::symmetric(-1).scalar == Polynomial2::constant(-0.5));
}

TEST_CASE("symmetric is the gauge transform of plate by chi = xy / 2", "[fields][gauge]") {
    // a_sym - a_plate = (-y/2, -x/2) = grad(-xy/2): symmetric -> plate uses +xy/2
    const auto from_sym = gauge_transform(FieldConfig::symmetric(-1), half_xy);
    const auto plate = FieldConfig::plate(-1);
    CHECK(from_sym.ax == plate.ax);
    CHECK(from_sym.ay == plate.ay);
    CHECK(from_sym.ex == plate.ex);
    CHECK(from_sym.ey == plate.ey);

    const auto from_plate = gauge_transform(plate, GaugeFunction(-1.0 * half_xy.polynomial()));
    const auto sym = FieldConfig::symmetric(-1);
    CHECK(from_plate.ax == sym.ax);
    CHECK(from_plate.ay == sym.ay);
    CHECK(from_plate.name() == "gauge-transformed(plate)");
}

TEST_CASE("gauge_transform: identity and non-harmonic rejection", "[fields][gauge]") {
    const auto sym = FieldConfig::symmetric(1);
    const auto same = gauge_transform(sym, GaugeFunction{});
    CHECK(same.ax == sym.ax);
    CHECK(same.ay == sym.ay);
    CHECK(same.scalar == sym.scalar);
    CHECK_THROWS_AS(gauge_transform(sym, GaugeFunction(Polynomial2{{{2, 0}, 1.0}})), NotHarmonic);
    CHECK_THROWS_AS(GaugeFunction(Polynomial2{{{5, 0}, 1.0}}), ValidationError);
    CHECK_THROWS_AS(gauge_transform(FieldConfig::free(), half_xy), UnsupportedKind);
}

TEST_CASE("field strength and divergence", "[fields]") {
    for (const auto& cfg : {FieldConfig::symmetric(1), FieldConfig::plate(-1), gauge_transform(FieldConfig::plate(1), half_xy)}) {
        CHECK(field_strength(cfg, 0.3, -1.7) == 1.0);
        CHECK(divergence_E(cfg, 5.0, 2.0) == 1.0);
    }
    CHECK(field_strength(FieldConfig::free(), 1.0, 1.0) == 0.0);
    CHECK(field_strength(FieldConfig::standard_landau(1), 1.0, 1.0) == 1.0);
    CHECK_THROWS_AS(divergence_E(FieldConfig::free(), 0.0, 0.0), UnsupportedKind);
}

TEST_CASE("harmonic gauge transforms: closure and invariance of b_z", "[fields][gauge][property]") {
    std::mt19937_64 rng(11);
    const Grid2D probe(3.0, 13);
    for (int trial = 0; trial < 50; ++trial) {
        const GaugeFunction c1 = random_harmonic(rng), c2 = random_harmonic(rng);
        REQUIRE(c1.is_harmonic());
        const auto base = trial % 2 ? FieldConfig::symmetric(1) : FieldConfig::plate(-1);
        const auto twice = gauge_transform(gauge_transform(base, c1), c2);
        const auto once = gauge_transform(base, c1 + c2);
        for (std::size_t k = 0; k < probe.size(); ++k) {
            const double x = probe.x_at(k), y = probe.y_at(k);
            const double scale = 1.0 + std::abs(once.ax(x, y)) + std::abs(once.ay(x, y));
            CHECK_THAT(twice.ax(x, y) - once.ax(x, y), WithinAbs(0.0, 1e-14 * scale));
            CHECK_THAT(twice.ay(x, y) - once.ay(x, y), WithinAbs(0.0, 1e-14 * scale));
            CHECK_THAT(field_strength(twice, x, y), WithinAbs(1.0, 1e-14));
            // b_z equals div E for in-plane fields
            CHECK_THAT(field_strength(twice, x, y) - divergence_E(twice, x, y), WithinAbs(0.0, 1e-14));
        }
        CHECK(twice.gauge.polynomial() == once.gauge.polynomial());
    }
}

TEST_CASE("check_landau_conditions", "[fields]") {
    const Grid2D probe(4.0, 17);
    const auto sym = check_landau_conditions(FieldConfig::symmetric(-1), probe);
    CHECK(sym.all());
    CHECK(sym.max_curl_E == 0.0);
    CHECK(sym.max_field_strength_deviation == 0.0);
    CHECK_FALSE(sym.zero_field);

    // a = (-y^2, 0): b_z = 2y
    const auto bent = FieldConfig::from_vector_potential(Polynomial2{{{0, 2}, -1.0}}, Polynomial2{}, 1.0);
    const auto r = check_landau_conditions(bent, probe);
    CHECK_FALSE(r.uniform_field);
    CHECK_THAT(r.max_field_strength_deviation, WithinAbs(8.0, 1e-12));
    const auto wider = check_landau_conditions(bent, Grid2D(8.0, 17));
    CHECK(wider.max_field_strength_deviation > r.max_field_strength_deviation);

    const auto free = check_landau_conditions(FieldConfig::free(), probe);
    CHECK(free.uniform_field);
    CHECK(free.zero_field);
}

TEST_CASE("predicted ground level", "[fields]") {
    CHECK(predicted_ground_level(FieldConfig::symmetric(-1)) == 0.0);
    CHECK(predicted_ground_level(FieldConfig::plate(1)) == 1.0);
    CHECK(predicted_ground_level(FieldConfig::standard_landau(1)) == 0.5);
    CHECK(predicted_ground_level(FieldConfig::standard_landau(-1)) == 0.5);
    CHECK_THROWS_AS(predicted_ground_level(FieldConfig::free()), ZeroField);
    CHECK_THROWS_AS(FieldConfig::symmetric(0), ValidationError);
}

TEST_CASE("gauge comparison flags a wrong gauge function", "[fields][gauge]") {
    const Grid2D probe(2.0, 9);
    const auto ok = compare_gauge(FieldConfig::symmetric(-1), FieldConfig::plate(-1), half_xy, probe);
    CHECK(ok.potentials_consistent);
    CHECK(ok.max_field_strength_difference == 0.0);
    const auto wrong = compare_gauge(FieldConfig::symmetric(-1), FieldConfig::plate(-1),
                                     GaugeFunction(Polynomial2{{{1, 1}, 1.0}}), probe);
    CHECK_FALSE(wrong.potentials_consistent);
    CHECK(wrong.max_field_strength_difference == 0.0);
    CHECK(wrong.max_potential_mismatch == 0.5);
}
