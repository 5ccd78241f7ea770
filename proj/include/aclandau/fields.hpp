#pragma once

// Field/dipole configurations in simulation units. The dipole axis is z and
// every field lives in the x-y plane, so the AC potential n x E reduces to
// a = (-E_y, E_x). Fields are kept as polynomials: all derivatives are exact.

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "errors.hpp"
#include "grid.hpp"
#include "polynomial.hpp"

namespace aclandau {

using Vec2 = std::array<double, 2>;

enum class FieldKind { Symmetric, Plate, GaugeTransformed, StandardLandau, Free, Custom };

inline std::string to_string(FieldKind k) {
    switch (k) {
        case FieldKind::Symmetric: return "symmetric";
        case FieldKind::Plate: return "plate";
        case FieldKind::GaugeTransformed: return "gauge-transformed";
        case FieldKind::StandardLandau: return "standard-landau";
        case FieldKind::Free: return "free";
        case FieldKind::Custom: return "custom";
    }
    return "unknown";
}

/// Polynomial gauge function chi(x, y) of degree <= 4.
class GaugeFunction {
public:
    static constexpr int max_degree = 4;

    GaugeFunction() = default;

    explicit GaugeFunction(Polynomial2 chi) : chi_(std::move(chi)) {
        if (chi_.degree() > max_degree) {
            throw ValidationError("gauge function degree " + std::to_string(chi_.degree()) +
                                  " exceeds " + std::to_string(max_degree));
        }
    }

    const Polynomial2& polynomial() const noexcept { return chi_; }
    double operator()(double x, double y) const { return chi_(x, y); }

    /// Exact test of lap(chi) == 0 on the coefficient table.
    bool is_harmonic() const { return chi_.laplacian().is_zero(1e-12 * std::max(1.0, chi_.max_abs_coefficient())); }

    friend GaugeFunction operator+(const GaugeFunction& a, const GaugeFunction& b) {
        return GaugeFunction(a.chi_ + b.chi_);
    }

private:
    Polynomial2 chi_;
};

/// A minimal-coupling problem: H = 1/2 (-i grad - coupling * a)^2 + s.
///
/// For AC kinds the underlying in-plane electric field (ex, ey) is kept
/// alongside a = (-ey, ex); coupling is sigma = +-1.
struct FieldConfig {
    FieldKind kind = FieldKind::Free;
    FieldKind base_kind = FieldKind::Free;  ///< meaningful for GaugeTransformed
    GaugeFunction gauge;                    ///< accumulated chi for GaugeTransformed
    double coupling = 0.0;
    Polynomial2 ex, ey;
    Polynomial2 ax, ay;
    Polynomial2 scalar;

    bool is_ac() const noexcept {
        return kind == FieldKind::Symmetric || kind == FieldKind::Plate ||
               kind == FieldKind::GaugeTransformed || kind == FieldKind::Custom;
    }

    int sigma() const noexcept { return coupling > 0.0 ? 1 : (coupling < 0.0 ? -1 : 0); }

    std::string name() const {
        if (kind == FieldKind::GaugeTransformed) return "gauge-transformed(" + to_string(base_kind) + ")";
        return to_string(kind);
    }

    /// Cylinder of uniform charge: E = (x, y) / 2.
    static FieldConfig symmetric(int sigma) {
        return from_field(FieldKind::Symmetric, 0.5 * Polynomial2::x(), 0.5 * Polynomial2::y(), sigma);
    }

    /// Uniformly charged plate: E = (x, 0).
    static FieldConfig plate(int sigma) {
        return from_field(FieldKind::Plate, Polynomial2::x(), Polynomial2{}, sigma);
    }

    /// Charged particle in a uniform magnetic field, symmetric gauge, no scalar term.
    static FieldConfig standard_landau(int sigma) {
        check_sigma(sigma);
        FieldConfig c;
        c.kind = c.base_kind = FieldKind::StandardLandau;
        c.coupling = sigma;
        c.ax = -0.5 * Polynomial2::y();
        c.ay = 0.5 * Polynomial2::x();
        return c;
    }

    static FieldConfig free() {
        FieldConfig c;
        c.kind = c.base_kind = FieldKind::Free;
        return c;
    }

    /// Arbitrary polynomial potential treated as an AC configuration with
    /// E = (a_y, -a_x) and scalar term coupling * div(E) / 2. Intended for
    /// diagnostics such as deliberately non-uniform fields.
    static FieldConfig from_vector_potential(Polynomial2 ax, Polynomial2 ay, double coupling) {
        FieldConfig c = from_field(FieldKind::Custom, ay, -ax, coupling > 0 ? 1 : -1);
        c.coupling = coupling;
        c.scalar = 0.5 * coupling * (c.ex.dx() + c.ey.dy());
        return c;
    }

private:
    static void check_sigma(int sigma) {
        if (sigma != 1 && sigma != -1) throw ValidationError("sigma must be +1 or -1");
    }

    static FieldConfig from_field(FieldKind kind, Polynomial2 ex, Polynomial2 ey, int sigma) {
        check_sigma(sigma);
        FieldConfig c;
        c.kind = c.base_kind = kind;
        c.coupling = sigma;
        c.ex = std::move(ex);
        c.ey = std::move(ey);
        c.ax = -c.ey;
        c.ay = c.ex;
        // mu hbar / (2 m c^2) div E = hbar omega_AC / 2 -> sigma / 2
        c.scalar = Polynomial2::constant(0.5 * sigma);
        return c;
    }
};

inline Vec2 evaluate_field(const FieldConfig& cfg, double x, double y) {
    if (!cfg.is_ac()) throw UnsupportedKind("no electric field for kind " + cfg.name());
    return {cfg.ex(x, y), cfg.ey(x, y)};
}

/// Geometric vector potential; the coupling sign is applied by the operators.
inline Vec2 vector_potential(const FieldConfig& cfg, double x, double y) { return {cfg.ax(x, y), cfg.ay(x, y)}; }

inline Polynomial2 field_strength_polynomial(const FieldConfig& cfg) { return cfg.ay.dx() - cfg.ax.dy(); }

/// b_z = d_x a_y - d_y a_x.
inline double field_strength(const FieldConfig& cfg, double x, double y) {
    return field_strength_polynomial(cfg)(x, y);
}

inline Polynomial2 divergence_polynomial(const FieldConfig& cfg) {
    if (!cfg.is_ac()) throw UnsupportedKind("no electric field for kind " + cfg.name());
    return cfg.ex.dx() + cfg.ey.dy();
}

inline double divergence_E(const FieldConfig& cfg, double x, double y) { return divergence_polynomial(cfg)(x, y); }

/// E' = E + (d_y chi, -d_x chi), hence a' = a + grad chi. The scalar term
/// and b_z are unchanged because chi is harmonic.
inline FieldConfig gauge_transform(const FieldConfig& cfg, const GaugeFunction& chi) {
    if (!cfg.is_ac()) throw UnsupportedKind("gauge transform of the field requires an AC kind, got " + cfg.name());
    if (!chi.is_harmonic()) throw NotHarmonic("gauge function is not harmonic");
    FieldConfig out = cfg;
    const Polynomial2& p = chi.polynomial();
    out.ex += p.dy();
    out.ey -= p.dx();
    out.ax = -out.ey;
    out.ay = out.ex;
    if (cfg.kind == FieldKind::GaugeTransformed) {
        out.gauge = cfg.gauge + chi;
    } else {
        out.base_kind = cfg.kind;
        out.gauge = chi;
    }
    out.kind = FieldKind::GaugeTransformed;
    return out;
}

struct ConditionTolerances {
    double curl = 1e-12;
    double uniformity = 1e-12;
    double out_of_plane = 1e-12;
};

/// Numerical check of the Landau conditions on a probe grid:
/// (i) planar reduction (n = z, E_z = 0), (ii) curl-free E, (iii) uniform b_z.
struct ConditionReport {
    double max_curl_E = 0.0;
    double field_strength_mean = 0.0;
    double max_field_strength_deviation = 0.0;
    double max_E_z = 0.0;
    bool in_plane = true;
    bool torque_free = false;     ///< (i)
    bool electrostatic = false;   ///< (ii)
    bool uniform_field = false;   ///< (iii)
    bool zero_field = false;      ///< b_z == 0 everywhere: degenerate
    ConditionTolerances tolerances;
    double probe_half_extent = 0.0;
    int probe_points = 0;

    bool all() const noexcept { return torque_free && electrostatic && uniform_field; }
};

inline ConditionReport check_landau_conditions(const FieldConfig& cfg, const Grid2D& probe,
                                               const ConditionTolerances& tol = {}) {
    ConditionReport r;
    r.tolerances = tol;
    r.probe_half_extent = probe.half_extent();
    r.probe_points = probe.points_per_axis();

    const Polynomial2 curl = cfg.ey.dx() - cfg.ex.dy();
    const Polynomial2 bz = field_strength_polynomial(cfg);

    double sum = 0.0;
    double bz_min = bz(probe.x_at(0), probe.y_at(0));
    double bz_max = bz_min;
    double bz_abs = 0.0;
    for (std::size_t k = 0; k < probe.size(); ++k) {
        const double x = probe.x_at(k), y = probe.y_at(k);
        r.max_curl_E = std::max(r.max_curl_E, std::abs(curl(x, y)));
        const double b = bz(x, y);
        sum += b;
        bz_min = std::min(bz_min, b);
        bz_max = std::max(bz_max, b);
        bz_abs = std::max(bz_abs, std::abs(b));
    }
    r.field_strength_mean = sum / static_cast<double>(probe.size());
    r.max_field_strength_deviation =
        std::max(bz_max - r.field_strength_mean, r.field_strength_mean - bz_min);

    // Fields are in-plane by construction: E_z == 0 and n == z.
    r.max_E_z = 0.0;
    r.in_plane = true;
    r.torque_free = r.in_plane && r.max_E_z <= tol.out_of_plane;
    r.electrostatic = r.max_curl_E <= tol.curl;
    r.uniform_field = r.max_field_strength_deviation <= tol.uniformity;
    r.zero_field = bz_abs <= tol.uniformity;
    return r;
}

/// Predicted energy of the lowest level in units of hbar |omega|.
inline double predicted_ground_level(const FieldConfig& cfg) {
    switch (cfg.kind) {
        case FieldKind::StandardLandau: return 0.5;
        case FieldKind::Free: throw ZeroField("free configuration has no Landau levels");
        default: return 0.5 * (1.0 + cfg.sigma());
    }
}

}  // namespace aclandau
