#pragma once

#include <cmath>
#include <compare>
#include <numbers>

#include "rovodef/errors.hpp"

namespace rovodef {

namespace constants {
// CODATA 2018 values, SI.
inline constexpr double c = 299792458.0;           // speed of light, m s^-1
inline constexpr double h = 6.62607015e-34;        // Planck constant, J s
inline constexpr double hbar = 1.054571817e-34;    // reduced Planck constant, J s
inline constexpr double k_B = 1.380649e-23;        // Boltzmann constant, J K^-1
inline constexpr double eps0 = 8.8541878128e-12;   // vacuum permittivity, F m^-1
inline constexpr double amu = 1.66053906660e-27;   // atomic mass unit, kg
inline constexpr double e_a0 = 8.4783536255e-30;   // atomic unit of dipole, C m
inline constexpr double angstrom = 1.0e-10;        // m
}  // namespace constants

inline constexpr double rad_s_per_cm1 = 2.0 * std::numbers::pi * constants::c * 100.0;
inline constexpr double joule_per_cm1 = constants::h * constants::c * 100.0;

// Spectroscopic energy/frequency in cm^-1, kept as a distinct type so that
// wavenumber and angular-frequency quantities cannot be mixed silently.
// Dynamics code converts to SI at its boundary via rad_s()/joule().
struct Wavenumber {
    double cm1 = 0.0;

    constexpr double rad_s() const { return cm1 * rad_s_per_cm1; }
    constexpr double joule() const { return cm1 * joule_per_cm1; }

    // Vacuum wavelength of a photon at this wavenumber.
    double wavelength_m() const {
        if (!(cm1 > 0.0)) throw physics_error("wavelength requires a positive wavenumber");
        return 1.0 / (100.0 * cm1);
    }

    static constexpr Wavenumber from_rad_s(double w) { return {w / rad_s_per_cm1}; }
    static constexpr Wavenumber from_joule(double e) { return {e / joule_per_cm1}; }

    constexpr Wavenumber operator+(Wavenumber o) const { return {cm1 + o.cm1}; }
    constexpr Wavenumber operator-(Wavenumber o) const { return {cm1 - o.cm1}; }
    constexpr Wavenumber operator-() const { return {-cm1}; }
    constexpr Wavenumber operator*(double s) const { return {cm1 * s}; }
    constexpr Wavenumber operator/(double s) const { return {cm1 / s}; }
    constexpr double operator/(Wavenumber o) const { return cm1 / o.cm1; }
    constexpr auto operator<=>(const Wavenumber&) const = default;
};

inline constexpr Wavenumber operator*(double s, Wavenumber w) { return {s * w.cm1}; }
inline Wavenumber abs(Wavenumber w) { return {std::fabs(w.cm1)}; }

// v_rec = hbar k / M for one photon at the given vacuum wavelength.
inline double photon_recoil_velocity(double wavelength_m, double mass_kg) {
    if (!(wavelength_m > 0.0)) throw physics_error("photon_recoil_velocity: wavelength must be > 0");
    if (!(mass_kg > 0.0)) throw physics_error("photon_recoil_velocity: mass must be > 0");
    return constants::hbar * (2.0 * std::numbers::pi / wavelength_m) / mass_kg;
}

// k_B T expressed as a wavenumber.
inline Wavenumber thermal_wavenumber(double T_kelvin) {
    if (!(T_kelvin > 0.0)) throw physics_error("thermal_wavenumber: temperature must be > 0");
    return Wavenumber::from_joule(constants::k_B * T_kelvin);
}

}  // namespace rovodef
