#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <string>

#include "rovodef/errors.hpp"
#include "rovodef/molecule.hpp"
#include "rovodef/units.hpp"

using namespace rovodef;

namespace {

MolecularConstants toy_constants() {
    MolecularConstants c;
    c.label = "toy";
    c.E_el = {1000.0};
    c.omega_e = {100.0};
    c.omega_e_x_e = {1.0};
    c.B_e = {0.1};
    c.alpha_e = {0.0};
    c.D = {0.0};
    c.Omega = 0;
    c.r_e_m = 3.0e-10;
    c.reduced_mass_kg = 10.0 * constants::amu;
    return c;
}

std::filesystem::path write_temp(const std::string& name, const std::string& content) {
    const auto dir = std::filesystem::temp_directory_path() / "rovodef_molecule_test";
    std::filesystem::create_directories(dir);
    const auto p = dir / name;
    std::ofstream out(p);
    out << content;
    return p;
}

const std::string doc_lower =
    "label = X\n"
    "E_el_cm1 = 0.0\n"
    "omega_e_cm1 = 159.1245\n"
    "omega_e_x_e_cm1 = 0.72547\n"
    "B_e_cm1 = 0.154707\n"
    "alpha_e_cm1 = 0.0008736\n"
    "D_cm1 = 5.81e-7\n"
    "Omega = 0\n"
    "r_e_angstrom = 3.0789\n"
    "reduced_mass_amu = 11.49488464\n"
    "dipole_au = 3.74\n";

const std::string doc_upper =
    "label = A\n"
    "E_el_cm1 = 17541.0\n"
    "omega_e_cm1 = 116.9863\n"
    "omega_e_x_e_cm1 = 0.3576\n"
    "B_e_cm1 = 0.110768\n"
    "alpha_e_cm1 = 0.0005388\n"
    "D_cm1 = 3.85e-7\n"
    "Omega = 0\n"
    "r_e_angstrom = 3.628859\n"
    "reduced_mass_amu = 11.49488464\n"
    "dipole_au = 3.74\n";

}  // namespace

TEST_CASE("level energy hand value") {
    const auto c = toy_constants();
    // G(1) = 100*1.5 - 1*2.25 = 147.75; B(1) = 0.1; rot = 0.1*6 = 0.6.
    CHECK(level_energy(c, 1, 2).cm1 == doctest::Approx(1148.35).epsilon(1e-12));
    CHECK(c.G_v(1).cm1 == doctest::Approx(147.75).epsilon(1e-12));
    CHECK(c.B_v(0).cm1 == doctest::Approx(0.1).epsilon(1e-12));
}

TEST_CASE("centrifugal and vibrational corrections enter with the right sign") {
    auto c = toy_constants();
    c.alpha_e = {0.01};
    c.D = {1e-5};
    const double x = 2.0 * 3.0;  // J = 2
    const double expect = 1000.0 + 147.75 + (0.1 - 0.01 * 1.5) * x - 1e-5 * x * x;
    CHECK(level_energy(c, 1, 2).cm1 == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("level energy guards") {
    const auto c = toy_constants();
    CHECK_THROWS_AS(level_energy(c, -1, 0), physics_error);
    // nu_max = floor(100/2 - 1/2) = 49.
    CHECK(c.nu_max() == 49);
    CHECK_NOTHROW(level_energy(c, 49, 0));
    CHECK_THROWS_AS(level_energy(c, 50, 0), physics_error);
    auto omega1 = c;
    omega1.Omega = 1;
    CHECK_THROWS_AS(level_energy(omega1, 0, 0, 1), physics_error);
    CHECK_NOTHROW(level_energy(omega1, 0, 1, 1));
}

TEST_CASE("harmonic well has no vibrational cap") {
    auto c = toy_constants();
    c.omega_e_x_e = {0.0};
    CHECK(c.nu_max() == std::numeric_limits<int>::max());
    CHECK(level_energy(c, 5000, 0).cm1 ==
          doctest::Approx(1000.0 + 100.0 * 5000.5).epsilon(1e-12));
}

TEST_CASE("level enumeration counts") {
    const auto c = toy_constants();
    CHECK(enumerate_levels(c, 1, 1).size() == 1);
    CHECK(enumerate_levels(c, 1, 2).size() == 4);   // (0,0,0) + (0,1,M)
    // max_nu * max_J^2 M-resolved levels below the truncation.
    auto big = c;
    big.omega_e = {10000.0};  // keep 10 vibrational levels bound
    big.omega_e_x_e = {1.0};
    CHECK(enumerate_levels(big, 10, 100).size() == 100000);
}

TEST_CASE("enumeration is energy sorted with deterministic ties") {
    const auto c = toy_constants();
    const auto levels = enumerate_levels(c, 3, 12);
    for (std::size_t i = 1; i < levels.size(); ++i) {
        CHECK(levels[i - 1].energy.cm1 <= levels[i].energy.cm1);
        if (levels[i - 1].energy.cm1 == levels[i].energy.cm1) {
            CHECK(levels[i - 1].level.nu == levels[i].level.nu);
            CHECK(levels[i - 1].level.J == levels[i].level.J);
            CHECK(levels[i - 1].level.M < levels[i].level.M);
        }
    }
    CHECK(levels.front().level.nu == 0);
    CHECK(levels.front().level.J == 0);
}

TEST_CASE("M sublevels are exactly degenerate") {
    const auto c = toy_constants();
    const auto levels = enumerate_levels(c, 2, 8);
    for (const auto& le : levels)
        CHECK(le.energy.cm1 == level_energy(c, le.level.nu, le.level.J).cm1);
}

TEST_CASE("vibrational ladder is strictly monotone over the bound range") {
    const auto c = toy_constants();
    for (int nu = 1; nu <= c.nu_max(); ++nu)
        CHECK(level_energy(c, nu, 0).cm1 > level_energy(c, nu - 1, 0).cm1);
}

TEST_CASE("thermal weights: Boltzmann ratio at one thermal quantum") {
    const double T = 700.0;
    const Wavenumber kT = thermal_wavenumber(T);
    std::vector<LevelEntry> levels = {
        {{"s", 0, 0, 0, 0}, Wavenumber{50.0}},
        {{"s", 1, 0, 0, 0}, Wavenumber{50.0} + kT},
    };
    const auto ens = thermal_weights(levels, T);
    CHECK(ens.weights[1] / ens.weights[0] == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
    CHECK(ens.weights[0] + ens.weights[1] == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("thermal weights: degenerate pair and single level") {
    std::vector<LevelEntry> pair = {
        {{"s", 0, 1, -1, 0}, Wavenumber{10.0}},
        {{"s", 0, 1, 1, 0}, Wavenumber{10.0}},
    };
    const auto ens = thermal_weights(pair, 300.0);
    CHECK(ens.weights[0] == 0.5);
    CHECK(ens.weights[1] == 0.5);

    std::vector<LevelEntry> one = {{{"s", 0, 0, 0, 0}, Wavenumber{1e4}}};
    CHECK(thermal_weights(one, 5.0).weights[0] == 1.0);
}

TEST_CASE("thermal weights: rotational multiplet carries (2J+1) aggregate weight") {
    const auto c = toy_constants();
    const auto ens = thermal_weights(enumerate_levels(c, 2, 10), 800.0);
    double w5 = 0.0, w5_single = 0.0;
    for (std::size_t i = 0; i < ens.levels.size(); ++i) {
        const auto& l = ens.levels[i].level;
        if (l.nu == 0 && l.J == 5) {
            w5 += ens.weights[i];
            if (l.M == 0) w5_single = ens.weights[i];
        }
    }
    CHECK(w5 == doctest::Approx(11.0 * w5_single).epsilon(1e-12));
}

TEST_CASE("thermal weights guards") {
    std::vector<LevelEntry> one = {{{"s", 0, 0, 0, 0}, Wavenumber{0.0}}};
    CHECK_THROWS_AS(thermal_weights(one, 0.0), physics_error);
    CHECK_THROWS_AS(thermal_weights({}, 300.0), physics_error);
}

TEST_CASE("constants validation rejects unbound or unphysical wells") {
    auto ok = toy_constants();
    CHECK_NOTHROW(ok.validate());
    auto c = ok;
    c.omega_e = {0.0};
    CHECK_THROWS_AS(c.validate(), config_error);
    c = ok;
    c.omega_e_x_e = {60.0};  // 2 x omega_e_x_e > omega_e
    CHECK_THROWS_AS(c.validate(), config_error);
    c = ok;
    c.omega_e_x_e = {-1.0};
    CHECK_THROWS_AS(c.validate(), config_error);
    c = ok;
    c.B_e = {0.0};
    CHECK_THROWS_AS(c.validate(), config_error);
    c = ok;
    c.r_e_m = 0.0;
    CHECK_THROWS_AS(c.validate(), config_error);
    c = ok;
    c.reduced_mass_kg = 0.0;
    CHECK_THROWS_AS(c.validate(), config_error);
    c = ok;
    c.label.clear();
    CHECK_THROWS_AS(c.validate(), config_error);
}

TEST_CASE("bundled sodium dimer constants load and place the reference line") {
    const auto mol = load_molecule_file(std::string(ROVODEF_DATA_DIR) + "/na2_constants.txt");
    CHECK(mol.f.label == "X1Sg");
    CHECK(mol.e.label == "A1Su");
    CHECK(mol.e.E_el.cm1 == 17541.0);
    CHECK(std::fabs(mol.dipole_Cm / (3.7416573867739413 * constants::e_a0) - 1.0) < 1e-14);
    CHECK(std::fabs(mol.total_mass_kg() / (4.0 * 11.49488464 * constants::amu) - 1.0) < 1e-14);
    // Strongest band line used throughout: f(0,0) -> e(6,1).
    const double offset =
        (level_energy(mol.e, 6, 1) - level_energy(mol.f, 0, 0)).cm1 - mol.e.E_el.cm1;
    CHECK(offset == doctest::Approx(666.136).epsilon(1e-6));
}

TEST_CASE("constants file parser diagnostics") {
    const std::string valid = doc_lower + "---\n" + doc_upper;
    CHECK_NOTHROW(load_molecule_file(write_temp("valid.txt", valid)));

    CHECK_THROWS_AS(load_molecule_file("/nonexistent/rovodef/constants.txt"), config_error);
    CHECK_THROWS_AS(load_molecule_file(write_temp("one_doc.txt", doc_lower)), config_error);
    CHECK_THROWS_AS(
        load_molecule_file(write_temp("three_docs.txt", valid + "---\n" + doc_upper)),
        config_error);

    std::string missing = doc_upper;
    missing.erase(missing.find("B_e_cm1"), missing.find("alpha_e_cm1") - missing.find("B_e_cm1"));
    CHECK_THROWS_AS(load_molecule_file(write_temp("missing.txt", doc_lower + "---\n" + missing)),
                    config_error);

    CHECK_THROWS_AS(
        load_molecule_file(write_temp("unknown.txt", valid + "mystery_key = 1\n")),
        config_error);
    CHECK_THROWS_AS(
        load_molecule_file(write_temp("dup.txt", doc_lower + "omega_e_cm1 = 2\n---\n" + doc_upper)),
        config_error);
    CHECK_THROWS_AS(
        load_molecule_file(write_temp("noval.txt", doc_lower + "just a line\n---\n" + doc_upper)),
        config_error);

    std::string bad_num = valid;
    bad_num.replace(bad_num.find("159.1245"), 8, "abcdefgh");
    CHECK_THROWS_AS(load_molecule_file(write_temp("badnum.txt", bad_num)), config_error);

    std::string trailing = valid;
    trailing.replace(trailing.find("159.1245"), 8, "159.1 xy");
    CHECK_THROWS_AS(load_molecule_file(write_temp("trailing.txt", trailing)), config_error);

    // Upper state must come second.
    CHECK_THROWS_AS(
        load_molecule_file(write_temp("swapped.txt", doc_upper + "---\n" + doc_lower)),
        config_error);

    std::string bad_dip = valid;
    bad_dip.replace(bad_dip.find("dipole_au = 3.74"), 16, "dipole_au = 0.00");
    CHECK_THROWS_AS(load_molecule_file(write_temp("baddip.txt", bad_dip)), config_error);
}

TEST_CASE("constants file accepts comments and blank lines") {
    const std::string text = "# leading comment\n\n" + doc_lower +
                             "\n----------\n# another\n" + doc_upper + "\n";
    CHECK_NOTHROW(load_molecule_file(write_temp("comments.txt", text)));
}
