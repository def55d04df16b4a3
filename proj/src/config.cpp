#include "rovodef/config.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>

#include "rovodef/errors.hpp"

namespace rovodef {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

struct RawConfig {
    // section -> key -> value
    std::map<std::string, std::map<std::string, std::string>> sections;
    std::string path;

    bool has(const std::string& sec, const std::string& key) const {
        const auto s = sections.find(sec);
        return s != sections.end() && s->second.count(key) > 0;
    }

    std::string get(const std::string& sec, const std::string& key) const {
        return sections.at(sec).at(key);
    }
};

RawConfig parse_raw(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open config file: " + path.string());
    RawConfig raw;
    raw.path = path.string();
    std::string section;
    std::string line_raw;
    int line_no = 0;
    while (std::getline(in, line_raw)) {
        ++line_no;
        std::string line = trim(line_raw);
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = trim(line.substr(0, hash));
        if (line.empty()) continue;
        const std::string where = raw.path + ":" + std::to_string(line_no);
        if (line.front() == '[') {
            if (line.back() != ']' || line.size() < 3)
                throw config_error(where + ": malformed section header");
            section = line.substr(1, line.size() - 2);
            raw.sections[section];
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw config_error(where + ": expected key = value");
        if (section.empty()) throw config_error(where + ": key outside any [section]");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw config_error(where + ": empty key");
        if (!raw.sections[section].emplace(key, value).second)
            throw config_error(where + ": duplicate key '" + key + "' in [" + section + "]");
    }
    return raw;
}

double as_number(const RawConfig& raw, const std::string& sec, const std::string& key,
                 double fallback) {
    if (!raw.has(sec, key)) return fallback;
    const std::string v = raw.get(sec, key);
    std::size_t pos = 0;
    double out = 0.0;
    try {
        out = std::stod(v, &pos);
    } catch (const std::exception&) {
        throw config_error(raw.path + ": [" + sec + "] " + key + " is not a number: '" + v + "'");
    }
    if (pos != v.size())
        throw config_error(raw.path + ": [" + sec + "] " + key + " has trailing characters");
    return out;
}

long long as_integer(const RawConfig& raw, const std::string& sec, const std::string& key,
                     long long fallback) {
    if (!raw.has(sec, key)) return fallback;
    const double v = as_number(raw, sec, key, 0.0);
    const long long i = std::llround(v);
    if (std::fabs(v - static_cast<double>(i)) > 1e-9)
        throw config_error(raw.path + ": [" + sec + "] " + key + " must be an integer");
    return i;
}

bool as_bool(const RawConfig& raw, const std::string& sec, const std::string& key,
             bool fallback) {
    if (!raw.has(sec, key)) return fallback;
    const std::string v = raw.get(sec, key);
    if (v == "true") return true;
    if (v == "false") return false;
    throw config_error(raw.path + ": [" + sec + "] " + key + " must be 'true' or 'false'");
}

void check_known_keys(const RawConfig& raw) {
    static const std::map<std::string, std::set<std::string>> known = {
        {"molecule", {"constants_file"}},
        {"laser", {"omega_cm1", "omega_offset_cm1", "power_W", "waist_m"}},
        {"thermal", {"T_kelvin", "max_nu", "max_J"}},
        {"beam",
         {"v0_m_s", "sigma_v_rel", "z_phase_2kz", "delta_z_m", "diffraction_kick", "n_molecules",
          "rng_seed", "n_steps", "state_selection", "initial_state", "alpha_floor_rad"}},
        {"emission", {"enabled", "rate_scale"}},
        {"scan",
         {"lo_cm1", "lo_offset_cm1", "hi_cm1", "hi_offset_cm1", "n_points", "alpha_floor_rad"}},
        {"lines", {"window_cm1"}},
        {"histogram", {"lo_rad", "hi_rad", "n_bins"}},
        {"output", {"dir"}},
    };
    for (const auto& [sec, kv] : raw.sections) {
        const auto it = known.find(sec);
        if (it == known.end())
            throw config_error(raw.path + ": unknown section [" + sec + "]");
        for (const auto& [key, value] : kv)
            if (it->second.count(key) == 0)
                throw config_error(raw.path + ": unknown key '" + key + "' in [" + sec + "]");
    }
}

Wavenumber resolve_frequency(const RawConfig& raw, const std::string& sec,
                             const std::string& abs_key, const std::string& off_key,
                             Wavenumber reference, double fallback_offset) {
    const bool has_abs = raw.has(sec, abs_key);
    const bool has_off = raw.has(sec, off_key);
    if (has_abs && has_off)
        throw config_error(raw.path + ": [" + sec + "] " + abs_key + " and " + off_key +
                           " are mutually exclusive");
    if (has_abs) return Wavenumber{as_number(raw, sec, abs_key, 0.0)};
    return reference + Wavenumber{as_number(raw, sec, off_key, fallback_offset)};
}

}  // namespace

RovibronicLevel parse_state_triplet(const std::string& text) {
    std::istringstream ss(text);
    int nu = 0, J = 0, M = 0;
    char c1 = 0, c2 = 0;
    if (!(ss >> nu >> c1 >> J >> c2 >> M) || c1 != ',' || c2 != ',' || !(ss >> std::ws).eof())
        throw config_error("state must be given as nu,J,M (got '" + text + "')");
    if (nu < 0 || J < 0 || std::abs(M) > J)
        throw config_error("state nu,J,M requires nu >= 0, J >= 0, |M| <= J");
    RovibronicLevel lv;
    lv.nu = nu;
    lv.J = J;
    lv.M = M;
    return lv;
}

RunConfig load_run_config(const std::filesystem::path& path) {
    const RawConfig raw = parse_raw(path);
    check_known_keys(raw);

    RunConfig cfg;
    if (!raw.has("molecule", "constants_file"))
        throw config_error(raw.path + ": missing [molecule] constants_file");
    std::filesystem::path constants{raw.get("molecule", "constants_file")};
    if (constants.is_relative()) constants = path.parent_path() / constants;
    cfg.constants_file = constants;
    cfg.molecule = load_molecule_file(constants);

    cfg.laser.omega = resolve_frequency(raw, "laser", "omega_cm1", "omega_offset_cm1",
                                        cfg.molecule.e.E_el, 666.116);
    cfg.laser.power_W = as_number(raw, "laser", "power_W", 3.0e-4);
    cfg.laser.waist_m = as_number(raw, "laser", "waist_m", 2.8209479e-5);
    cfg.laser.validate();

    cfg.T_kelvin = as_number(raw, "thermal", "T_kelvin", 1000.0);
    if (!(cfg.T_kelvin > 0.0))
        throw config_error(raw.path + ": [thermal] T_kelvin must be > 0");
    cfg.max_nu = static_cast<int>(as_integer(raw, "thermal", "max_nu", 10));
    cfg.max_J = static_cast<int>(as_integer(raw, "thermal", "max_J", 100));
    if (cfg.max_nu < 1 || cfg.max_J < 1)
        throw config_error(raw.path + ": [thermal] truncations must be >= 1");

    cfg.beam.v0_m_s = as_number(raw, "beam", "v0_m_s", 500.0);
    cfg.beam.sigma_v_rel = as_number(raw, "beam", "sigma_v_rel", 0.0);
    cfg.beam.z_phase_2kz = as_number(raw, "beam", "z_phase_2kz", 1.5707963267948966);
    cfg.beam.delta_z_m = as_number(raw, "beam", "delta_z_m", 0.0);
    cfg.beam.diffraction_kick = as_bool(raw, "beam", "diffraction_kick", true);
    cfg.beam.n_molecules = static_cast<int>(as_integer(raw, "beam", "n_molecules", 1));
    cfg.beam.rng_seed = static_cast<std::uint64_t>(as_integer(raw, "beam", "rng_seed", 1));
    cfg.beam.n_steps = static_cast<int>(as_integer(raw, "beam", "n_steps", 4096));
    cfg.beam.alpha_floor_rad = as_number(raw, "beam", "alpha_floor_rad", 1.0e-6);
    if (raw.has("beam", "state_selection")) {
        const std::string sel = raw.get("beam", "state_selection");
        if (sel == "single")
            cfg.beam.selection = StateSelection::single;
        else if (sel == "thermal")
            cfg.beam.selection = StateSelection::thermal;
        else if (sel == "affected")
            cfg.beam.selection = StateSelection::affected;
        else
            throw config_error(raw.path +
                               ": [beam] state_selection must be single, thermal or affected");
    }
    if (raw.has("beam", "initial_state"))
        cfg.beam.initial_state = parse_state_triplet(raw.get("beam", "initial_state"));
    cfg.beam.initial_state.state = cfg.molecule.f.label;
    cfg.beam.initial_state.Omega = cfg.molecule.f.Omega;
    cfg.beam.emission_enabled = as_bool(raw, "emission", "enabled", true);
    cfg.beam.emission_rate_scale = as_number(raw, "emission", "rate_scale", 1.0);
    cfg.beam.validate();

    cfg.scan.lo = resolve_frequency(raw, "scan", "lo_cm1", "lo_offset_cm1",
                                    cfg.molecule.e.E_el, 665.9);
    cfg.scan.hi = resolve_frequency(raw, "scan", "hi_cm1", "hi_offset_cm1",
                                    cfg.molecule.e.E_el, 666.5);
    cfg.scan.n_points = static_cast<int>(as_integer(raw, "scan", "n_points", 1201));
    cfg.scan.alpha_floor_rad = as_number(raw, "scan", "alpha_floor_rad", 1.0e-6);
    if (!(cfg.scan.lo < cfg.scan.hi))
        throw config_error(raw.path + ": [scan] lower frequency must be < upper");
    if (cfg.scan.n_points < 2)
        throw config_error(raw.path + ": [scan] n_points must be >= 2");
    if (cfg.scan.alpha_floor_rad < 0.0)
        throw config_error(raw.path + ": [scan] alpha_floor_rad must be >= 0");

    cfg.lines_window = Wavenumber{as_number(raw, "lines", "window_cm1", 0.6)};
    if (cfg.lines_window.cm1 < 0.0)
        throw config_error(raw.path + ": [lines] window_cm1 must be >= 0");

    cfg.histogram.lo_rad = as_number(raw, "histogram", "lo_rad", -1.5e-4);
    cfg.histogram.hi_rad = as_number(raw, "histogram", "hi_rad", 1.5e-4);
    cfg.histogram.n_bins = static_cast<int>(as_integer(raw, "histogram", "n_bins", 150));
    if (!(cfg.histogram.lo_rad < cfg.histogram.hi_rad))
        throw config_error(raw.path + ": [histogram] lo_rad must be < hi_rad");
    if (cfg.histogram.n_bins < 1)
        throw config_error(raw.path + ": [histogram] n_bins must be >= 1");

    if (raw.has("output", "dir")) cfg.output_dir = raw.get("output", "dir");
    return cfg;
}

}  // namespace rovodef
