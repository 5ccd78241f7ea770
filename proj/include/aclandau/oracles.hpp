#pragma once

// Closed-form references that do not depend on the dipole physics: the
// Dirichlet box and the symbolic comparison of two gauges.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "fields.hpp"
#include "grid.hpp"

namespace aclandau {

struct BoxLevel {
    int p = 1, q = 1;
    double continuum = 0.0;  ///< pi^2 (p^2 + q^2) / (2 D^2)
    double discrete = 0.0;   ///< exact eigenvalue of the five-point Laplacian
};

/// Lowest `count` levels of -lap/2 on a square Dirichlet box of side D =
/// box_side(), degenerate pairs listed separately.
inline std::vector<BoxLevel> box_levels(const Grid2D& g, int count) {
    const int n = g.points_per_axis();
    const double D = g.box_side();
    const double h = g.spacing();
    std::vector<BoxLevel> all;
    const int pmax = std::min(n, static_cast<int>(std::ceil(std::sqrt(2.0 * count))) + 2);
    for (int p = 1; p <= pmax; ++p) {
        for (int q = 1; q <= pmax; ++q) {
            BoxLevel l;
            l.p = p;
            l.q = q;
            l.continuum = std::numbers::pi * std::numbers::pi * (p * p + q * q) / (2.0 * D * D);
            auto one = [&](int m) { return (1.0 - std::cos(m * std::numbers::pi / (n + 1))) / (h * h); };
            l.discrete = one(p) + one(q);
            all.push_back(l);
        }
    }
    std::stable_sort(all.begin(), all.end(), [](const BoxLevel& a, const BoxLevel& b) {
        return a.continuum < b.continuum || (a.continuum == b.continuum && a.p < b.p);
    });
    if (static_cast<int>(all.size()) > count) all.resize(static_cast<std::size_t>(count));
    return all;
}

struct GaugeComparison {
    double max_field_strength_difference = 0.0;  ///< |b_z' - b_z| on the probe grid
    Polynomial2 potential_mismatch_x;            ///< a'_x - a_x - d_x chi
    Polynomial2 potential_mismatch_y;
    double max_potential_mismatch = 0.0;         ///< largest mismatch coefficient
    bool potentials_consistent = false;
};

/// Compares two configurations that are claimed to be related by chi.
inline GaugeComparison compare_gauge(const FieldConfig& from, const FieldConfig& to, const GaugeFunction& chi,
                                     const Grid2D& probe) {
    GaugeComparison c;
    const Polynomial2 bz_from = field_strength_polynomial(from);
    const Polynomial2 bz_to = field_strength_polynomial(to);
    for (std::size_t k = 0; k < probe.size(); ++k) {
        const double x = probe.x_at(k), y = probe.y_at(k);
        c.max_field_strength_difference = std::max(c.max_field_strength_difference, std::abs(bz_to(x, y) - bz_from(x, y)));
    }
    c.potential_mismatch_x = to.ax - from.ax - chi.polynomial().dx();
    c.potential_mismatch_y = to.ay - from.ay - chi.polynomial().dy();
    c.max_potential_mismatch =
        std::max(c.potential_mismatch_x.max_abs_coefficient(), c.potential_mismatch_y.max_abs_coefficient());
    c.potentials_consistent = c.max_potential_mismatch <= 1e-12;
    return c;
}

}  // namespace aclandau
