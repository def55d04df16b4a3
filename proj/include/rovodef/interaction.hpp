#pragma once

#include <optional>
#include <vector>

#include "rovodef/exec.hpp"
#include "rovodef/molecule.hpp"
#include "rovodef/morse.hpp"
#include "rovodef/units.hpp"

namespace rovodef {

// Standing-wave laser: mode f(R) = exp(-x^2/(2 w^2)) cos(k z), intensity
// normalization I = P / A with effective area A = pi w^2 and effective
// interaction length l = sqrt(A).
struct LaserField {
    Wavenumber omega;
    double power_W = 0.0;
    double waist_m = 0.0;

    void validate() const;
    double effective_area_m2() const;
    double effective_length_m() const;
    double wavelength_m() const { return omega.wavelength_m(); }
    double wavevector_inv_m() const;
};

// One dipole-allowed rovibronic line f(nu,J,M) -> e(nu',J',M'=M).
struct TransitionLine {
    RovibronicLevel lower;
    RovibronicLevel upper;
    Wavenumber frequency;  // line position
    Wavenumber Gamma;      // natural linewidth of this line
    double fc = 0.0;       // signed vibrational overlap R_nu^nu'
    double L = 0.0;        // orientation factor
    double S = 0.0;        // Honl-London factor
    Wavenumber g;          // peak coupling at f(R) = 1 for the build laser
    Wavenumber delta;      // detuning = frequency - laser omega at build time

    Wavenumber detuning(const LaserField& laser) const { return frequency - laser.omega; }
};

// Gamma = omega^3 d^2 |R|^2 S(J,J') / ((2J'+1) 3 pi eps0 hbar c^3).
Wavenumber line_width(double dipole_Cm, double fc, Wavenumber omega_line, int J, int J_prime);

// g^2 = [3 lambda^3 / (16 pi^2 hbar c)] * Gamma * [(2J'+1) L^2 / S] * I,
// with I the energy flux P/A and lambda the line wavelength.
Wavenumber coupling_g(Wavenumber Gamma, Wavenumber omega_line, int J_prime, double L, double S,
                      double power_W, double area_m2);

// All dipole-allowed lines from the given lower levels whose position lies
// within +-window of the laser frequency, sorted by (frequency, nu, J, M).
// Lines with vanishing orientation factor are omitted.
std::vector<TransitionLine> build_line_list(const Molecule& mol, const OverlapMatrix& fc,
                                            const std::vector<LevelEntry>& f_levels,
                                            const LaserField& laser, Wavenumber window);

// Strongest-coupled line of one lower state at the given laser frequency:
// argmax |g/delta|, ties broken by smaller |delta|, then lower nu'.
std::optional<TransitionLine> select_dominant_transition(
    const std::vector<TransitionLine>& lines_of_state, Wavenumber laser_omega);

// Energy shift of the lower dressed branch at mode value f, relative to its
// f = 0 limit: sign(delta) * [sqrt(g^2 f^2 + delta^2/4) - |delta|/2].
// delta = 0 uses the + branch.
Wavenumber dressed_shift(Wavenumber g, Wavenumber delta, double f_mode);

// Strict |delta| > threshold * g.
bool is_nonresonant(Wavenumber g, Wavenumber delta, double threshold = 10.0);

struct DeflectionRecord {
    double alpha_rad = 0.0;
    double recoil_velocity_m_s = 0.0;
    bool raman_nath_ok = true;
    double raman_nath_bound_rad = 0.0;  // lambda / l
};

// Closed-form deflection angle alpha = v_rec g^2 l / (v_x^2 delta), signed by
// delta, evaluated at the maximal-gradient phase sin(2kz) = 1. Throws
// physics_error when the nonresonance predicate fails.
DeflectionRecord deflection_angle(const TransitionLine& line, const LaserField& laser,
                                  double v_x_m_s, double mass_kg);

struct ScanPoint {
    double omega_cm1 = 0.0;
    int nu = 0;
    int J = 0;
    int M = 0;
    double alpha_rad = 0.0;
    bool masked = false;
    double g_cm1 = 0.0;
    double delta_cm1 = 0.0;
    int upper_nu = 0;
    int upper_J = 0;
};

struct ScanSettings {
    Wavenumber lo;
    Wavenumber hi;
    int n_points = 2;
    double alpha_floor_rad = 1e-6;  // emit a state at a point only when |alpha| >= floor
};

// Parallel kernel: deflection angle versus laser frequency for every lower
// state, via its dominant transition at each point. Masked points
// (nonresonance violated) are flagged, not dropped. Points are ordered by
// (frequency index, nu, J, M).
std::vector<ScanPoint> scan_frequencies(const Molecule& mol, const OverlapMatrix& fc,
                                        const std::vector<LevelEntry>& f_levels,
                                        const LaserField& laser_template,
                                        const ScanSettings& settings, double v_x_m_s,
                                        double mass_kg, ExecPolicy policy = ExecPolicy::serial);

struct SpacingStats {
    int n_positions = 0;        // distinct line positions in the window
    int n_strong = 0;           // strong positions inside the core window
    double min_all_cm1 = 0.0;   // min adjacent spacing, all positions
    double min_strong_cm1 = 0.0;  // min adjacent spacing, strong positions
    double strong_floor_frac = 0.0;
    double core_halfwidth_cm1 = 0.0;
};

// Adjacent-spacing statistics of distinct line positions. "Strong" lines have
// max-over-M coupling >= floor_frac of the largest coupling within
// +-core_halfwidth of the window centre.
SpacingStats line_spacing_stats(const std::vector<TransitionLine>& lines, Wavenumber center,
                                double core_halfwidth_cm1 = 0.125, double floor_frac = 0.7);

}  // namespace rovodef
