#include <chrono>
#include <cstdio>
#include <cstring>

#include "rovodef/beam.hpp"
#include "rovodef/exec.hpp"
#include "rovodef/interaction.hpp"
#include "rovodef/molecule.hpp"
#include "rovodef/morse.hpp"

// Benchmarks the three parallel kernels against their serial reference and
// verifies that the results agree bit for bit.

using namespace rovodef;

namespace {

template <typename F>
double timed(F&& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(t1 - t0).count();
}

Molecule test_molecule() {
    Molecule mol;
    mol.f.label = "lower";
    mol.f.E_el = {0.0};
    mol.f.omega_e = {159.0};
    mol.f.omega_e_x_e = {0.725};
    mol.f.B_e = {0.1547};
    mol.f.alpha_e = {8.7e-4};
    mol.f.D = {5.8e-7};
    mol.f.r_e_m = 3.08e-10;
    mol.f.reduced_mass_kg = 11.495 * constants::amu;
    mol.e = mol.f;
    mol.e.label = "upper";
    mol.e.E_el = {17541.0};
    mol.e.omega_e = {117.0};
    mol.e.omega_e_x_e = {0.358};
    mol.e.B_e = {0.1108};
    mol.e.alpha_e = {5.4e-4};
    mol.e.r_e_m = 3.63e-10;
    mol.dipole_Cm = 3.74 * constants::e_a0;
    return mol;
}

}  // namespace

int main() {
    const Molecule mol = test_molecule();
    const MorseWell fw = MorseWell::from_constants(mol.f);
    const MorseWell ew = MorseWell::from_constants(mol.e);
    const RadialGrid grid = overlap_grid(fw, ew);

    std::printf("threads available: %d\n", max_threads(ExecPolicy::openmp));

    {
        OverlapMatrix a, b;
        const double ts = timed([&] { a = overlap_matrix(fw, ew, 10, 40, grid, ExecPolicy::serial); });
        const double tp = timed([&] { b = overlap_matrix(fw, ew, 10, 40, grid, ExecPolicy::openmp); });
        const bool same = a.R.size() == b.R.size() &&
                          std::memcmp(a.R.data(), b.R.data(), a.R.size() * sizeof(double)) == 0;
        std::printf("overlap matrix  11 x 41 x %d pts : serial %.3f s, openmp %.3f s, "
                    "speedup %.2fx, identical: %s\n",
                    grid.n, ts, tp, ts / tp, same ? "yes" : "NO");
    }

    const auto levels = enumerate_levels(mol.f, 4, 40);
    const auto ens = thermal_weights(levels, 1000.0);
    LaserField laser{mol.e.E_el + Wavenumber{666.116}, 3.0e-4, 2.8209479e-5};
    const OverlapMatrix fc = overlap_matrix(fw, ew, 10, 40, grid, ExecPolicy::openmp);
    const double mass = mol.total_mass_kg();

    {
        ScanSettings scan{mol.e.E_el + Wavenumber{665.9}, mol.e.E_el + Wavenumber{666.5}, 400,
                          1e-6};
        std::vector<ScanPoint> a, b;
        const double ts = timed(
            [&] { a = scan_frequencies(mol, fc, levels, laser, scan, 500.0, mass, ExecPolicy::serial); });
        const double tp = timed(
            [&] { b = scan_frequencies(mol, fc, levels, laser, scan, 500.0, mass, ExecPolicy::openmp); });
        bool same = a.size() == b.size();
        for (std::size_t i = 0; same && i < a.size(); ++i)
            same = a[i].omega_cm1 == b[i].omega_cm1 && a[i].alpha_rad == b[i].alpha_rad &&
                   a[i].nu == b[i].nu && a[i].J == b[i].J && a[i].M == b[i].M;
        std::printf("frequency scan  %d pts x %zu levels : serial %.3f s, openmp %.3f s, "
                    "speedup %.2fx, identical: %s\n",
                    scan.n_points, levels.size(), ts, tp, ts / tp, same ? "yes" : "NO");
    }

    {
        BeamParameters beam;
        beam.n_molecules = 4000;
        beam.sigma_v_rel = 0.01;
        beam.selection = StateSelection::affected;
        beam.rng_seed = 7;
        HistogramSettings hist;
        EnsembleResult a, b;
        const double ts =
            timed([&] { a = simulate_beam(mol, fc, ens, laser, beam, hist, ExecPolicy::serial); });
        const double tp =
            timed([&] { b = simulate_beam(mol, fc, ens, laser, beam, hist, ExecPolicy::openmp); });
        bool same = a.trajectories.size() == b.trajectories.size();
        for (std::size_t i = 0; same && i < a.trajectories.size(); ++i)
            same = a.trajectories[i].v_z_m_s == b.trajectories[i].v_z_m_s &&
                   a.trajectories[i].alpha_rad == b.trajectories[i].alpha_rad;
        std::printf("beam ensemble   %d molecules x %d steps : serial %.3f s, openmp %.3f s, "
                    "speedup %.2fx, identical: %s\n",
                    beam.n_molecules, beam.n_steps, ts, tp, ts / tp, same ? "yes" : "NO");
    }
    return 0;
}
