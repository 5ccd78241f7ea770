#pragma once

// Dimensional inputs of the dipole problem and their reduction to simulation
// units: hbar = m = 1, length in l_AC, energy in hbar*|omega_AC|.

#include <cmath>

#include "errors.hpp"

namespace aclandau {

/// SI inputs. mu and rho0 are signed; everything else must be positive.
struct PhysicalParams {
    double mass = 1.0;              ///< kg
    double magnetic_moment = 1.0;   ///< J/T
    double charge_density = 1.0;    ///< C/m^3, the uniform rho0
    double epsilon0 = 1.0;          ///< F/m
    double light_speed = 1.0;       ///< m/s
    double hbar = 1.0;              ///< J s

    void validate() const {
        if (!(mass > 0.0) || !(epsilon0 > 0.0) || !(light_speed > 0.0) || !(hbar > 0.0)) {
            throw ValidationError("mass, epsilon0, light_speed and hbar must be positive");
        }
        if (!std::isfinite(magnetic_moment) || !std::isfinite(charge_density)) {
            throw ValidationError("magnetic moment and charge density must be finite");
        }
    }
};

struct DerivedUnits {
    double omega = 0.0;           ///< signed cyclotron frequency, rad/s
    int sigma = 1;                ///< revolution direction, sign(mu * rho0)
    double magnetic_length = 0.0; ///< l_AC, m
    double energy_quantum = 0.0;  ///< hbar * |omega|, J
};

/// omega_AC = mu rho0 / (m c^2 eps0), l_AC = sqrt(hbar c^2 eps0 / |mu rho0|).
inline DerivedUnits derive_units(const PhysicalParams& p) {
    p.validate();
    const double coupling = p.magnetic_moment * p.charge_density;
    if (coupling == 0.0) {
        throw DegenerateCoupling("mu * rho0 == 0: no Landau quantization, use the free configuration");
    }
    const double c2 = p.light_speed * p.light_speed;
    DerivedUnits u;
    u.omega = coupling / (p.mass * c2 * p.epsilon0);
    u.sigma = u.omega > 0.0 ? 1 : -1;
    u.magnetic_length = std::sqrt(p.hbar * c2 * p.epsilon0 / std::abs(coupling));
    u.energy_quantum = p.hbar * std::abs(u.omega);
    return u;
}

/// Conversion factors between SI and simulation units for one parameter set.
class SimulationScales {
public:
    explicit SimulationScales(const PhysicalParams& p) : params_(p), units_(derive_units(p)) {}

    const PhysicalParams& params() const noexcept { return params_; }
    const DerivedUnits& units() const noexcept { return units_; }
    int sigma() const noexcept { return units_.sigma; }

    double length() const noexcept { return units_.magnetic_length; }
    double energy() const noexcept { return units_.energy_quantum; }
    double momentum() const noexcept { return params_.hbar / units_.magnetic_length; }

    double to_dimensionless_energy(double joules) const noexcept { return joules / energy(); }
    double to_joules(double energy_units) const noexcept { return energy_units * energy(); }
    double to_dimensionless_length(double metres) const noexcept { return metres / length(); }
    double to_metres(double length_units) const noexcept { return length_units * length(); }

    /// Prefactor of the geometric vector potential in simulation units.
    ///
    /// With E measured in units of rho0 * l_AC / eps0, the AC potential
    /// mu c^-2 (n x E) in units of hbar / l_AC becomes coupling() * (-E_y, E_x).
    /// Evaluates to sigma up to rounding.
    double coupling() const noexcept {
        const auto& p = params_;
        const double l = length();
        return p.magnetic_moment * p.charge_density * l * l /
               (p.epsilon0 * p.light_speed * p.light_speed * p.hbar);
    }

    /// (mu hbar / 2 m c^2) div E with div E = rho0 / eps0, in units of
    /// hbar |omega_AC|. Evaluates to sigma / 2 up to rounding.
    double scalar_term() const noexcept {
        const auto& p = params_;
        const double joules = p.magnetic_moment * p.hbar /
                              (2.0 * p.mass * p.light_speed * p.light_speed) *
                              (p.charge_density / p.epsilon0);
        return joules / energy();
    }

private:
    PhysicalParams params_;
    DerivedUnits units_;
};

inline SimulationScales nondimensionalize(const PhysicalParams& p) { return SimulationScales(p); }

/// Closed-form level in simulation units: nu + (1 + sigma) / 2.
inline double ac_level(int nu, int sigma) noexcept { return nu + 0.5 * (1.0 + sigma); }

}  // namespace aclandau
