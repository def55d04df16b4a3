#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "rovodef/units.hpp"

namespace rovodef {

// Dunham-style spectroscopic constants of one electronic state.
// Level energies follow
//   E = E_el + omega_e (nu+1/2) - omega_e_x_e (nu+1/2)^2
//       + B_nu [J(J+1) - Omega^2] - D [J(J+1) - Omega^2]^2
// with B_nu = B_e - alpha_e (nu+1/2).
struct MolecularConstants {
    std::string label;
    Wavenumber E_el;
    Wavenumber omega_e;
    Wavenumber omega_e_x_e;
    Wavenumber B_e;
    Wavenumber alpha_e;
    Wavenumber D;
    int Omega = 0;
    double r_e_m = 0.0;
    double reduced_mass_kg = 0.0;

    // Throws config_error when the constants cannot describe a bound well.
    void validate() const;

    Wavenumber G_v(int nu) const;  // vibrational term value
    Wavenumber B_v(int nu) const;  // rotational constant of level nu

    // Highest bound Morse vibrational index floor(lambda - 1/2) with
    // lambda = omega_e / (2 omega_e_x_e). Harmonic wells (x_e = 0) have no cap.
    int nu_max() const;
};

struct RovibronicLevel {
    std::string state;  // electronic-state label
    int nu = 0;
    int J = 0;
    int M = 0;
    int Omega = 0;
};

struct LevelEntry {
    RovibronicLevel level;
    Wavenumber energy;
};

Wavenumber level_energy(const MolecularConstants& c, int nu, int J, int Omega);
inline Wavenumber level_energy(const MolecularConstants& c, int nu, int J) {
    return level_energy(c, nu, J, c.Omega);
}

// All (nu, J, M) with nu < max_nu, J < max_J, |M| <= J, J >= |Omega|,
// sorted by energy (ties broken by nu, J, M for determinism).
std::vector<LevelEntry> enumerate_levels(const MolecularConstants& c, int max_nu, int max_J);

struct ThermalEnsemble {
    double T_kelvin = 0.0;
    int max_nu = 0;
    int max_J = 0;
    std::vector<LevelEntry> levels;   // M-resolved
    std::vector<double> weights;      // normalized, same order as levels
};

// Boltzmann weights per M-resolved level, relative to the lowest energy in
// the list.
ThermalEnsemble thermal_weights(std::vector<LevelEntry> levels, double T_kelvin);

// The coupled f (lower, populated) / e (upper) electronic-state pair plus the
// f->e electronic transition dipole.
struct Molecule {
    MolecularConstants f;
    MolecularConstants e;
    double dipole_Cm = 0.0;

    // Homonuclear dimer: atom mass m = 2 mu, total mass 2 m = 4 mu.
    double total_mass_kg() const { return 4.0 * f.reduced_mass_kg; }
};

// Parses the two-document key=value constants file (lower state first,
// documents separated by a line of dashes). Throws config_error on malformed
// or physically invalid input.
Molecule load_molecule_file(const std::filesystem::path& path);

}  // namespace rovodef
