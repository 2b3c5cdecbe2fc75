#pragma once

#include <cmath>

namespace secnot {

/// Physical constants of the surface-electron system (SI units, CODATA 2018).
/// The image potential -lambda*e^2/z (Gaussian e^2, i.e. e^2/(4 pi eps0) in SI)
/// binds the electron above the helium surface with a hydrogen-like ladder.
struct PhysicalConstants {
    double electron_mass = 9.1093837015e-31;      // kg
    double elementary_charge = 1.602176634e-19;   // C
    double hbar = 1.054571817e-34;                // J s
    double vacuum_permittivity = 8.8541878128e-12; // F/m
    double dielectric_constant = 1.057;           // liquid helium

    /// Image-charge coupling Lambda = (eps - 1) / [4 (eps + 1)].
    double image_factor() const {
        return (dielectric_constant - 1.0) / (4.0 * (dielectric_constant + 1.0));
    }

    /// e^2 / (4 pi eps0), units J m.
    double coulomb_e2() const {
        return elementary_charge * elementary_charge /
               (4.0 * M_PI * vacuum_permittivity);
    }

    /// Effective Bohr radius r_B = hbar^2 / (m_e e^2 Lambda), about 76 Angstrom.
    double effective_bohr_radius() const {
        return hbar * hbar / (electron_mass * coulomb_e2() * image_factor());
    }

    /// Effective Rydberg R = m_e e^4 Lambda^2 / (2 hbar^2), about 0.65 meV.
    double rydberg_energy() const {
        const double e2l = coulomb_e2() * image_factor();
        return electron_mass * e2l * e2l / (2.0 * hbar * hbar);
    }
};

} // namespace secnot
