#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <string>
#include <vector>

#include "rovodef/errors.hpp"
#include "rovodef/molecule.hpp"
#include "rovodef/morse.hpp"
#include "support/numerov.hpp"

using namespace rovodef;

namespace {

const Molecule& na2() {
    static const Molecule mol =
        load_molecule_file(std::string(ROVODEF_DATA_DIR) + "/na2_constants.txt");
    return mol;
}

}  // namespace

TEST_CASE("Morse well parameters from spectroscopic constants") {
    const auto w = MorseWell::from_constants(na2().f);
    CHECK(w.lambda == doctest::Approx(159.1245 / (2.0 * 0.72547)).epsilon(1e-12));
    CHECK(w.D_e.cm1 == doctest::Approx(159.1245 * 159.1245 / (4.0 * 0.72547)).epsilon(1e-12));
    CHECK(w.nu_max == 109);
    // Term values reproduce omega_e (nu+1/2) - omega_e_x_e (nu+1/2)^2.
    const double v = 5.5;
    CHECK(w.energy(5).cm1 == doctest::Approx(159.1245 * v - 0.72547 * v * v).epsilon(1e-10));

    auto harmonic = na2().f;
    harmonic.omega_e_x_e = {0.0};
    CHECK_THROWS_AS(MorseWell::from_constants(harmonic), physics_error);
}

TEST_CASE("grid construction invariants and guards") {
    const auto lo = MorseWell::from_constants(na2().f);
    const auto up = MorseWell::from_constants(na2().e);
    const auto g = overlap_grid(lo, up);
    CHECK(g.n == 4001);
    CHECK(g.lo_m > 0.0);
    CHECK(g.lo_m < std::min(lo.r_e_m, up.r_e_m));
    CHECK(g.hi_m > std::max(lo.r_e_m, up.r_e_m));
    CHECK(g.r(g.n - 1) == doctest::Approx(g.hi_m).epsilon(1e-12));
    CHECK_THROWS_AS(overlap_grid(lo, up, 4000), config_error);
    CHECK_THROWS_AS(overlap_grid(lo, up, 1), config_error);
}

TEST_CASE("analytic eigenfunctions are normalized and orthogonal on the grid") {
    const auto w = MorseWell::from_constants(na2().f);
    const auto g = overlap_grid(w, MorseWell::from_constants(na2().e));
    for (int nu : {0, 5, 20}) {
        const auto u = sample_wavefunction(w, nu, g);
        CHECK(overlap_integral(u, u, g.dr_m) == doctest::Approx(1.0).epsilon(1e-8));
    }
    const auto u0 = sample_wavefunction(w, 0, g);
    const auto u5 = sample_wavefunction(w, 5, g);
    const auto u3 = sample_wavefunction(w, 3, g);
    const auto u7 = sample_wavefunction(w, 7, g);
    CHECK(std::fabs(overlap_integral(u0, u5, g.dr_m)) < 1e-8);
    CHECK(std::fabs(overlap_integral(u3, u7, g.dr_m)) < 1e-8);
}

TEST_CASE("ground-state peak sits at the analytic maximum") {
    const auto w = MorseWell::from_constants(na2().f);
    const auto g = overlap_grid(w, MorseWell::from_constants(na2().e));
    const auto u = sample_wavefunction(w, 0, g);
    int imax = 0;
    for (int i = 1; i < g.n; ++i)
        if (std::fabs(u[static_cast<std::size_t>(i)]) >
            std::fabs(u[static_cast<std::size_t>(imax)]))
            imax = i;
    // u_0 ~ e^{-z/2} z^{(2 lambda - 1)/2} peaks at z = 2 lambda - 1.
    const double r_peak =
        w.r_e_m + std::log(2.0 * w.lambda / (2.0 * w.lambda - 1.0)) / w.a_inv_m;
    CHECK(std::fabs(g.r(imax) - r_peak) <= g.dr_m);
}

TEST_CASE("wavefunction guards") {
    const auto w = MorseWell::from_constants(na2().f);
    CHECK_THROWS_AS(w.wavefunction(-1, w.r_e_m), physics_error);
    CHECK_THROWS_AS(w.wavefunction(w.nu_max + 1, w.r_e_m), physics_error);
    CHECK_THROWS_AS(w.wavefunction(0, 0.0), physics_error);
    CHECK_THROWS_AS(w.energy(w.nu_max + 1), physics_error);
    CHECK(w.wavefunction(0, w.r_e_m + 1e-8) > 0.0);
    // Deep in the inner wall the amplitude underflows to an exact zero.
    CHECK(w.wavefunction(0, 1e-13) == 0.0);
}

TEST_CASE("overlap matrix invariants") {
    const auto lo = MorseWell::from_constants(na2().f);
    const auto up = MorseWell::from_constants(na2().e);
    const auto g = overlap_grid(lo, up);
    const auto m = overlap_matrix(lo, up, 10, 40, g);
    for (double r : m.R) CHECK(std::fabs(r) <= 1.0 + 1e-6);
    for (int nu = 0; nu <= 10; ++nu) {
        double s = 0.0;
        for (int nup = 0; nup <= 40; ++nup) s += m(nu, nup) * m(nu, nup);
        CHECK(s <= 1.0 + 1e-3);
    }
    CHECK_THROWS_AS(overlap_matrix(lo, up, 200, 10, g), physics_error);
    CHECK_THROWS_AS(overlap_matrix(lo, up, -1, 10, g), physics_error);
}

TEST_CASE("identical wells give the identity overlap matrix") {
    const auto w = MorseWell::from_constants(na2().f);
    const auto g = overlap_grid(w, w);
    const auto m = overlap_matrix(w, w, 10, 10, g);
    for (int nu = 0; nu <= 10; ++nu)
        for (int nup = 0; nup <= 10; ++nup)
            CHECK(std::fabs(m(nu, nup) - (nu == nup ? 1.0 : 0.0)) < 1e-6);
}

TEST_CASE("strong band overlap for the working line") {
    const auto lo = MorseWell::from_constants(na2().f);
    const auto up = MorseWell::from_constants(na2().e);
    const auto g = overlap_grid(lo, up);
    const double r06 = franck_condon_overlap(lo, up, 0, 6, g);
    CHECK(std::fabs(r06 * r06 - 0.113) < 0.02);
}

TEST_CASE("parallel overlap matrix is bit-identical to serial") {
    const auto lo = MorseWell::from_constants(na2().f);
    const auto up = MorseWell::from_constants(na2().e);
    const auto g = overlap_grid(lo, up);
    const auto ms = overlap_matrix(lo, up, 10, 40, g, ExecPolicy::serial);
    const auto mp = overlap_matrix(lo, up, 10, 40, g, ExecPolicy::openmp);
    REQUIRE(ms.R.size() == mp.R.size());
    for (std::size_t i = 0; i < ms.R.size(); ++i) CHECK(ms.R[i] == mp.R[i]);
}

TEST_CASE("independent ODE integration reproduces the analytic wavefunctions") {
    const auto lo = MorseWell::from_constants(na2().f);
    const auto up = MorseWell::from_constants(na2().e);
    const auto g = overlap_grid(lo, up);

    // Self-overlap of the two constructions is 1 up to quadrature error.
    const auto n0 = testing::numerov_wavefunction(lo, 0, g);
    const auto a0 = sample_wavefunction(lo, 0, g);
    CHECK(overlap_integral(n0, a0, g.dr_m) == doctest::Approx(1.0).epsilon(1e-5));

    CHECK(std::fabs(testing::numerov_overlap(lo, up, 0, 6, g) -
                    franck_condon_overlap(lo, up, 0, 6, g)) < 1e-4);
    CHECK(std::fabs(testing::numerov_overlap(lo, up, 3, 10, g) -
                    franck_condon_overlap(lo, up, 3, 10, g)) < 1e-4);
    CHECK(std::fabs(testing::numerov_overlap(lo, up, 0, 0, g) -
                    franck_condon_overlap(lo, up, 0, 0, g)) < 1e-4);
}

TEST_CASE("step-halving convergence check") {
    const auto lo = MorseWell::from_constants(na2().f);
    const auto up = MorseWell::from_constants(na2().e);
    const auto fine = overlap_matrix(lo, up, 4, 8, overlap_grid(lo, up));
    CHECK_NOTHROW(check_grid_convergence(lo, up, fine));
    const auto coarse = overlap_matrix(lo, up, 4, 8, overlap_grid(lo, up, 41));
    CHECK_THROWS_AS(check_grid_convergence(lo, up, coarse), physics_error);
}

TEST_CASE("quadrature guards") {
    std::vector<double> even(4, 1.0);
    CHECK_THROWS_AS(overlap_integral(even, even, 0.1), physics_error);
    std::vector<double> a(5, 1.0), b(7, 1.0);
    CHECK_THROWS_AS(overlap_integral(a, b, 0.1), physics_error);
}
