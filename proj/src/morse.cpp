#include "rovodef/morse.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rovodef/errors.hpp"

namespace rovodef {

MorseWell MorseWell::from_constants(const MolecularConstants& c) {
    if (!(c.omega_e_x_e.cm1 > 0.0))
        throw physics_error(c.label + ": a Morse well requires omega_e_x_e > 0");
    MorseWell w;
    w.lambda = c.omega_e.cm1 / (2.0 * c.omega_e_x_e.cm1);
    if (!(w.lambda > 0.5))
        throw physics_error(c.label + ": no bound Morse level (lambda <= 1/2)");
    w.D_e = Wavenumber{c.omega_e.cm1 * c.omega_e.cm1 / (4.0 * c.omega_e_x_e.cm1)};
    w.r_e_m = c.r_e_m;
    w.reduced_mass_kg = c.reduced_mass_kg;
    w.a_inv_m = c.omega_e.rad_s() * std::sqrt(c.reduced_mass_kg / (2.0 * w.D_e.joule()));
    w.nu_max = static_cast<int>(std::floor(w.lambda - 0.5));
    return w;
}

double MorseWell::wavefunction(int nu, double r_m) const {
    if (nu < 0 || nu > nu_max)
        throw physics_error("Morse wavefunction: nu = " + std::to_string(nu) +
                            " outside the bound range 0.." + std::to_string(nu_max));
    if (!(r_m > 0.0)) throw physics_error("Morse wavefunction: r must be > 0");

    const double alpha = 2.0 * lambda - 2.0 * nu - 1.0;
    const double z = 2.0 * lambda * std::exp(-a_inv_m * (r_m - r_e_m));

    // Generalized Laguerre L_nu^alpha(z) by the three-term recurrence, with
    // the magnitude tracked separately to survive large nu.
    double lag = 1.0, lag_prev = 0.0, scale_log = 0.0;
    for (int k = 0; k < nu; ++k) {
        const double next =
            ((2.0 * k + 1.0 + alpha - z) * lag - (k + alpha) * lag_prev) / (k + 1.0);
        lag_prev = lag;
        lag = next;
        const double m = std::fabs(lag);
        if (m > 1e250) {
            lag /= m;
            lag_prev /= m;
            scale_log += std::log(m);
        }
    }
    if (lag == 0.0) return 0.0;

    // N^2 = a nu! alpha / Gamma(2 lambda - nu); assemble log|u| and exponentiate.
    const double log_n2 = std::log(a_inv_m) + std::lgamma(nu + 1.0) + std::log(alpha) -
                          std::lgamma(2.0 * lambda - nu);
    const double log_u = 0.5 * log_n2 - 0.5 * z + 0.5 * alpha * std::log(z) +
                         std::log(std::fabs(lag)) + scale_log;
    if (log_u < -740.0) return 0.0;
    return std::copysign(std::exp(log_u), lag);
}

Wavenumber MorseWell::energy(int nu) const {
    if (nu < 0 || nu > nu_max)
        throw physics_error("Morse energy: nu outside the bound range");
    const double v = nu + 0.5;
    const Wavenumber omega_e{2.0 * D_e.cm1 / lambda};
    const Wavenumber omega_e_x_e{omega_e.cm1 / (2.0 * lambda)};
    return omega_e * v - omega_e_x_e * (v * v);
}

RadialGrid overlap_grid(const MorseWell& lower, const MorseWell& upper, int n_points) {
    if (n_points < 3 || n_points % 2 == 0)
        throw config_error("overlap grid requires an odd point count >= 3");
    const double a_min = std::min(lower.a_inv_m, upper.a_inv_m);
    const double re_lo = std::min(lower.r_e_m, upper.r_e_m);
    const double re_hi = std::max(lower.r_e_m, upper.r_e_m);
    RadialGrid g;
    g.lo_m = std::max(re_lo - 5.0 / a_min, 1e-13);
    g.hi_m = re_hi + 12.0 / a_min;
    g.n = n_points;
    g.dr_m = (g.hi_m - g.lo_m) / (n_points - 1);
    return g;
}

std::vector<double> sample_wavefunction(const MorseWell& well, int nu, const RadialGrid& grid) {
    std::vector<double> u(static_cast<std::size_t>(grid.n));
    for (int i = 0; i < grid.n; ++i) u[static_cast<std::size_t>(i)] = well.wavefunction(nu, grid.r(i));
    return u;
}

double overlap_integral(const std::vector<double>& f1, const std::vector<double>& f2,
                        double dr_m) {
    if (f1.size() != f2.size() || f1.size() < 3 || f1.size() % 2 == 0)
        throw physics_error("overlap integral requires matching odd-length samples");
    const std::size_t n = f1.size();
    double sum = f1[0] * f2[0] + f1[n - 1] * f2[n - 1];
    for (std::size_t i = 1; i + 1 < n; ++i)
        sum += (i % 2 == 1 ? 4.0 : 2.0) * f1[i] * f2[i];
    return sum * dr_m / 3.0;
}

double franck_condon_overlap(const MorseWell& lower, const MorseWell& upper, int nu,
                             int nu_prime, const RadialGrid& grid) {
    const auto u_lo = sample_wavefunction(lower, nu, grid);
    const auto u_up = sample_wavefunction(upper, nu_prime, grid);
    return overlap_integral(u_lo, u_up, grid.dr_m);
}

OverlapMatrix overlap_matrix(const MorseWell& lower, const MorseWell& upper, int nu_lower_max,
                             int nu_upper_max, const RadialGrid& grid, ExecPolicy policy) {
    if (nu_lower_max < 0 || nu_upper_max < 0)
        throw physics_error("overlap matrix: index ranges must be >= 0");
    if (nu_lower_max > lower.nu_max || nu_upper_max > upper.nu_max)
        throw physics_error("overlap matrix: requested nu beyond the bound range");

    const int n_lo = nu_lower_max + 1;
    const int n_up = nu_upper_max + 1;
    std::vector<std::vector<double>> lo_u(static_cast<std::size_t>(n_lo));
    std::vector<std::vector<double>> up_u(static_cast<std::size_t>(n_up));

    OverlapMatrix m;
    m.nu_lower_max = nu_lower_max;
    m.nu_upper_max = nu_upper_max;
    m.grid = grid;
    m.R.assign(static_cast<std::size_t>(n_lo) * n_up, 0.0);

    const bool par = policy == ExecPolicy::openmp;
#pragma omp parallel if (par)
    {
#pragma omp for schedule(static)
        for (int nu = 0; nu < n_lo; ++nu)
            lo_u[static_cast<std::size_t>(nu)] = sample_wavefunction(lower, nu, grid);
#pragma omp for schedule(static)
        for (int nu = 0; nu < n_up; ++nu)
            up_u[static_cast<std::size_t>(nu)] = sample_wavefunction(upper, nu, grid);
#pragma omp for schedule(static)
        for (int idx = 0; idx < n_lo * n_up; ++idx) {
            const int nu = idx / n_up;
            const int nu_p = idx % n_up;
            m.R[static_cast<std::size_t>(idx)] =
                overlap_integral(lo_u[static_cast<std::size_t>(nu)],
                                 up_u[static_cast<std::size_t>(nu_p)], grid.dr_m);
        }
    }
    return m;
}

void check_grid_convergence(const MorseWell& lower, const MorseWell& upper,
                            const OverlapMatrix& computed, double tol) {
    RadialGrid fine = computed.grid;
    fine.n = 2 * computed.grid.n - 1;
    fine.dr_m = (fine.hi_m - fine.lo_m) / (fine.n - 1);
    const OverlapMatrix refined = overlap_matrix(lower, upper, computed.nu_lower_max,
                                                 computed.nu_upper_max, fine);
    double worst = 0.0;
    for (std::size_t i = 0; i < computed.R.size(); ++i)
        worst = std::max(worst, std::fabs(computed.R[i] - refined.R[i]));
    if (worst > tol)
        throw physics_error("vibrational overlap quadrature not converged: step halving moves "
                            "entries by " + std::to_string(worst));
}

}  // namespace rovodef
