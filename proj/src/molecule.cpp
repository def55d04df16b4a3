#include "rovodef/molecule.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include "rovodef/errors.hpp"

namespace rovodef {

void MolecularConstants::validate() const {
    if (label.empty()) throw config_error("molecular constants: empty state label");
    if (!(omega_e.cm1 > 0.0))
        throw config_error(label + ": omega_e must be > 0");
    if (omega_e_x_e.cm1 < 0.0)
        throw config_error(label + ": omega_e_x_e must be >= 0");
    if (omega_e_x_e.cm1 > 0.0 && !(2.0 * omega_e_x_e.cm1 < omega_e.cm1))
        throw config_error(label + ": 2 omega_e_x_e must be < omega_e for a bound well");
    if (!(B_e.cm1 > 0.0))
        throw config_error(label + ": B_e must be > 0");
    if (alpha_e.cm1 < 0.0)
        throw config_error(label + ": alpha_e must be >= 0");
    if (D.cm1 < 0.0)
        throw config_error(label + ": D must be >= 0");
    if (Omega < 0)
        throw config_error(label + ": Omega must be >= 0");
    if (!(r_e_m > 0.0))
        throw config_error(label + ": r_e must be > 0");
    if (!(reduced_mass_kg > 0.0))
        throw config_error(label + ": reduced mass must be > 0");
}

Wavenumber MolecularConstants::G_v(int nu) const {
    const double v = nu + 0.5;
    return omega_e * v - omega_e_x_e * (v * v);
}

Wavenumber MolecularConstants::B_v(int nu) const {
    return B_e - alpha_e * (nu + 0.5);
}

int MolecularConstants::nu_max() const {
    if (omega_e_x_e.cm1 <= 0.0) return std::numeric_limits<int>::max();
    const double lambda = omega_e.cm1 / (2.0 * omega_e_x_e.cm1);
    return static_cast<int>(std::floor(lambda - 0.5));
}

Wavenumber level_energy(const MolecularConstants& c, int nu, int J, int Omega) {
    if (nu < 0) throw physics_error(c.label + ": vibrational index must be >= 0");
    if (nu > c.nu_max())
        throw physics_error(c.label + ": vibrational index " + std::to_string(nu) +
                            " exceeds the bound range (nu_max = " + std::to_string(c.nu_max()) +
                            ")");
    if (J < std::abs(Omega))
        throw physics_error(c.label + ": J must be >= |Omega|");
    const double x = static_cast<double>(J) * (J + 1) - static_cast<double>(Omega) * Omega;
    return c.E_el + c.G_v(nu) + c.B_v(nu) * x - c.D * (x * x);
}

std::vector<LevelEntry> enumerate_levels(const MolecularConstants& c, int max_nu, int max_J) {
    if (max_nu < 0 || max_J < 0) throw config_error("level truncations must be >= 0");
    std::vector<LevelEntry> out;
    for (int nu = 0; nu < max_nu; ++nu) {
        for (int J = std::abs(c.Omega); J < max_J; ++J) {
            const Wavenumber E = level_energy(c, nu, J, c.Omega);
            for (int M = -J; M <= J; ++M)
                out.push_back({{c.label, nu, J, M, c.Omega}, E});
        }
    }
    std::sort(out.begin(), out.end(), [](const LevelEntry& a, const LevelEntry& b) {
        if (a.energy != b.energy) return a.energy < b.energy;
        if (a.level.nu != b.level.nu) return a.level.nu < b.level.nu;
        if (a.level.J != b.level.J) return a.level.J < b.level.J;
        return a.level.M < b.level.M;
    });
    return out;
}

ThermalEnsemble thermal_weights(std::vector<LevelEntry> levels, double T_kelvin) {
    if (!(T_kelvin > 0.0)) throw physics_error("thermal weights: temperature must be > 0");
    if (levels.empty()) throw physics_error("thermal weights: empty level list");
    const Wavenumber kT = thermal_wavenumber(T_kelvin);
    Wavenumber E_min = levels.front().energy;
    for (const auto& le : levels) E_min = std::min(E_min, le.energy);

    ThermalEnsemble ens;
    ens.T_kelvin = T_kelvin;
    ens.weights.reserve(levels.size());
    double total = 0.0;
    for (const auto& le : levels) {
        const double w = std::exp(-(le.energy - E_min) / kT);
        ens.weights.push_back(w);
        total += w;
    }
    for (double& w : ens.weights) w /= total;
    ens.levels = std::move(levels);
    return ens;
}

namespace {

// One key=value document of the constants file.
struct Document {
    std::map<std::string, std::string> kv;
    int first_line = 0;
};

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

bool is_separator(const std::string& line) {
    if (line.size() < 3) return false;
    return line.find_first_not_of('-') == std::string::npos;
}

double parse_number(const Document& doc, const std::string& key, const std::string& where) {
    const auto it = doc.kv.find(key);
    if (it == doc.kv.end())
        throw config_error(where + ": missing key '" + key + "'");
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(it->second, &pos);
    } catch (const std::exception&) {
        throw config_error(where + ": key '" + key + "' is not a number: '" + it->second + "'");
    }
    if (pos != it->second.size())
        throw config_error(where + ": trailing characters after the value of '" + key + "'");
    return v;
}

int parse_int(const Document& doc, const std::string& key, const std::string& where) {
    const double v = parse_number(doc, key, where);
    const int i = static_cast<int>(std::lround(v));
    if (std::fabs(v - i) > 1e-9)
        throw config_error(where + ": key '" + key + "' must be an integer");
    return i;
}

const std::vector<std::string>& required_keys() {
    static const std::vector<std::string> keys = {
        "label",      "E_el_cm1",   "omega_e_cm1",      "omega_e_x_e_cm1",
        "B_e_cm1",    "alpha_e_cm1", "D_cm1",           "Omega",
        "r_e_angstrom", "reduced_mass_amu", "dipole_au"};
    return keys;
}

MolecularConstants constants_from_document(const Document& doc, const std::string& where) {
    for (const auto& [key, value] : doc.kv) {
        if (std::find(required_keys().begin(), required_keys().end(), key) ==
            required_keys().end())
            throw config_error(where + ": unknown key '" + key + "'");
    }
    MolecularConstants c;
    const auto label_it = doc.kv.find("label");
    if (label_it == doc.kv.end() || label_it->second.empty())
        throw config_error(where + ": missing key 'label'");
    c.label = label_it->second;
    c.E_el = {parse_number(doc, "E_el_cm1", where)};
    c.omega_e = {parse_number(doc, "omega_e_cm1", where)};
    c.omega_e_x_e = {parse_number(doc, "omega_e_x_e_cm1", where)};
    c.B_e = {parse_number(doc, "B_e_cm1", where)};
    c.alpha_e = {parse_number(doc, "alpha_e_cm1", where)};
    c.D = {parse_number(doc, "D_cm1", where)};
    c.Omega = parse_int(doc, "Omega", where);
    c.r_e_m = parse_number(doc, "r_e_angstrom", where) * constants::angstrom;
    c.reduced_mass_kg = parse_number(doc, "reduced_mass_amu", where) * constants::amu;
    c.validate();
    return c;
}

}  // namespace

Molecule load_molecule_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open constants file: " + path.string());

    std::vector<Document> docs(1);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = trim(raw);
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = trim(line.substr(0, hash));
        if (line.empty()) continue;
        if (is_separator(line)) {
            docs.emplace_back();
            docs.back().first_line = line_no;
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw config_error(path.string() + ":" + std::to_string(line_no) +
                               ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw config_error(path.string() + ":" + std::to_string(line_no) + ": empty key");
        auto& doc = docs.back();
        if (!doc.kv.emplace(key, value).second)
            throw config_error(path.string() + ":" + std::to_string(line_no) +
                               ": duplicate key '" + key + "'");
    }
    if (docs.size() != 2)
        throw config_error(path.string() + ": expected exactly two electronic-state documents "
                           "separated by a dashed line, found " + std::to_string(docs.size()));

    Molecule mol;
    mol.f = constants_from_document(docs[0], path.string() + " (first document)");
    mol.e = constants_from_document(docs[1], path.string() + " (second document)");
    if (!(mol.e.E_el.cm1 > mol.f.E_el.cm1))
        throw config_error(path.string() +
                           ": the second document must be the upper electronic state");
    mol.dipole_Cm = parse_number(docs[0], "dipole_au", path.string() + " (first document)") *
                    constants::e_a0;
    if (!(mol.dipole_Cm > 0.0))
        throw config_error(path.string() + ": dipole_au must be > 0");
    return mol;
}

}  // namespace rovodef
