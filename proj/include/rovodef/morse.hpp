#pragma once

#include <vector>

#include "rovodef/exec.hpp"
#include "rovodef/molecule.hpp"
#include "rovodef/units.hpp"

namespace rovodef {

inline constexpr int default_grid_points = 4001;

// Morse well derived from spectroscopic constants:
//   D_e = omega_e^2 / (4 omega_e_x_e),   lambda = omega_e / (2 omega_e_x_e),
//   a = omega_e[rad/s] * sqrt(mu / (2 D_e[J])).
struct MorseWell {
    Wavenumber D_e;
    double lambda = 0.0;
    double a_inv_m = 0.0;
    double r_e_m = 0.0;
    double reduced_mass_kg = 0.0;
    int nu_max = 0;

    static MorseWell from_constants(const MolecularConstants& c);

    // Radial eigenfunction u_nu(r) = r R_nu(r), normalized as
    // integral u^2 dr = 1; units m^-1/2. Evaluated from the analytic
    // Laguerre form in log space (stable for lambda ~ 100).
    double wavefunction(int nu, double r_m) const;

    Wavenumber energy(int nu) const;  // vibrational term value of the well
};

struct RadialGrid {
    double lo_m = 0.0;
    double hi_m = 0.0;
    double dr_m = 0.0;
    int n = 0;

    double r(int i) const { return lo_m + i * dr_m; }
};

// Shared quadrature grid covering both wells:
// [min(r_e) - 5/a, max(r_e) + 12/a] with the smaller range parameter a,
// clipped to r > 0; n must be odd (composite Simpson).
RadialGrid overlap_grid(const MorseWell& lower, const MorseWell& upper,
                        int n_points = default_grid_points);

std::vector<double> sample_wavefunction(const MorseWell& well, int nu, const RadialGrid& grid);

// Composite Simpson of f1*f2 over the uniform grid.
double overlap_integral(const std::vector<double>& f1, const std::vector<double>& f2,
                        double dr_m);

// Signed vibrational overlap R_nu^nu' between the two wells.
double franck_condon_overlap(const MorseWell& lower, const MorseWell& upper,
                             int nu, int nu_prime, const RadialGrid& grid);

struct OverlapMatrix {
    int nu_lower_max = 0;   // inclusive row range 0..nu_lower_max
    int nu_upper_max = 0;   // inclusive column range 0..nu_upper_max
    RadialGrid grid;
    std::vector<double> R;  // row-major (nu, nu')

    double operator()(int nu, int nu_prime) const {
        return R[static_cast<std::size_t>(nu) * (nu_upper_max + 1) + nu_prime];
    }
};

// Parallel kernel: all overlaps R_nu^nu' for nu <= nu_lower_max,
// nu' <= nu_upper_max on the given grid.
OverlapMatrix overlap_matrix(const MorseWell& lower, const MorseWell& upper,
                             int nu_lower_max, int nu_upper_max, const RadialGrid& grid,
                             ExecPolicy policy = ExecPolicy::serial);

// Recomputes the matrix with halved step and throws physics_error if any
// entry moves by more than tol (quadrature non-convergence).
void check_grid_convergence(const MorseWell& lower, const MorseWell& upper,
                            const OverlapMatrix& computed, double tol = 1e-6);

}  // namespace rovodef
