#pragma once

// Charge <-> dipole correspondence q Phi <-> mu lambda / (c^2 eps0) and the
// closed-form level separations on both sides.

#include <cmath>

#include "errors.hpp"
#include "params.hpp"

namespace aclandau {

/// Charged particle threaded by flux Phi through a reference area S.
struct StandardLandauParams {
    double charge = 1.0;       ///< q, C
    double flux = 1.0;         ///< Phi, Wb
    double area = 1.0;         ///< S, m^2
    double mass = 1.0;         ///< kg
    double hbar = 1.0;
    double field = 0.0;        ///< B = Phi / S
    double line_density = 0.0; ///< lambda of the dual line charge, filled by duality_map
    double omega = 0.0;        ///< q B / m
    double magnetic_length = 0.0;

    /// Fills B, omega and l from q, Phi, S.
    static StandardLandauParams make(double q, double flux, double area, double mass = 1.0, double hbar = 1.0) {
        if (area == 0.0) throw DegenerateArea("reference area S is zero");
        if (!(mass > 0.0) || !(hbar > 0.0)) throw ValidationError("mass and hbar must be positive");
        if (!std::isfinite(q) || !std::isfinite(flux) || !std::isfinite(area)) {
            throw ValidationError("charge, flux and area must be finite");
        }
        StandardLandauParams p;
        p.charge = q;
        p.flux = flux;
        p.area = area;
        p.mass = mass;
        p.hbar = hbar;
        p.field = flux / area;
        p.omega = q * p.field / mass;
        const double qb = std::abs(q * p.field);
        p.magnetic_length = qb > 0.0 ? std::sqrt(hbar / qb) : INFINITY;
        return p;
    }
};

/// Dipole of moment mu next to a line charge lambda = rho0 S.
struct DipoleParams {
    double magnetic_moment = 1.0;
    double line_density = 1.0;   ///< lambda, C/m
    double area = 1.0;           ///< S, m^2
    double charge_density = 1.0; ///< rho0 = lambda / S
    double epsilon0 = 1.0;
    double light_speed = 1.0;
    double mass = 1.0;
    double hbar = 1.0;

    PhysicalParams physical() const {
        PhysicalParams p;
        p.mass = mass;
        p.magnetic_moment = magnetic_moment;
        p.charge_density = charge_density;
        p.epsilon0 = epsilon0;
        p.light_speed = light_speed;
        p.hbar = hbar;
        return p;
    }
};

/// Constants of the dipole side that the charge side does not fix.
struct DipoleConstants {
    double magnetic_moment = 1.0;
    double epsilon0 = 1.0;
    double light_speed = 1.0;
};

/// lambda = q Phi c^2 eps0 / mu, rho0 = lambda / S.
inline DipoleParams duality_map(const StandardLandauParams& p, const DipoleConstants& k = {}) {
    if (p.area == 0.0) throw DegenerateArea("reference area S is zero");
    if (k.magnetic_moment == 0.0) throw DegenerateCoupling("magnetic moment is zero");
    if (!(k.epsilon0 > 0.0) || !(k.light_speed > 0.0)) throw ValidationError("epsilon0 and c must be positive");
    DipoleParams d;
    d.magnetic_moment = k.magnetic_moment;
    d.epsilon0 = k.epsilon0;
    d.light_speed = k.light_speed;
    d.mass = p.mass;
    d.hbar = p.hbar;
    d.area = p.area;
    d.line_density = p.charge * p.flux * k.light_speed * k.light_speed * k.epsilon0 / k.magnetic_moment;
    d.charge_density = d.line_density / p.area;
    return d;
}

/// Phi = mu lambda / (c^2 eps0 q) for a chosen probe charge q.
inline StandardLandauParams duality_map(const DipoleParams& d, double charge) {
    if (d.area == 0.0) throw DegenerateArea("reference area S is zero");
    if (charge == 0.0) throw ValidationError("probe charge must be nonzero");
    const double flux = d.magnetic_moment * d.line_density / (d.light_speed * d.light_speed * d.epsilon0 * charge);
    StandardLandauParams p = StandardLandauParams::make(charge, flux, d.area, d.mass, d.hbar);
    p.line_density = d.line_density;
    return p;
}

/// hbar |q Phi / S| / m.
inline double level_separation(const StandardLandauParams& p) {
    if (p.area == 0.0) throw DegenerateArea("reference area S is zero");
    return p.hbar * std::abs(p.charge * p.flux / p.area) / p.mass;
}

/// hbar |mu lambda / S| / (m c^2 eps0).
inline double level_separation(const DipoleParams& d) {
    if (d.area == 0.0) throw DegenerateArea("reference area S is zero");
    return d.hbar * std::abs(d.magnetic_moment * d.line_density / d.area) /
           (d.mass * d.light_speed * d.light_speed * d.epsilon0);
}

}  // namespace aclandau
