#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "rovodef/beam.hpp"
#include "rovodef/interaction.hpp"
#include "rovodef/units.hpp"

namespace rovodef {

// Parsed run configuration. Frequencies may be given absolute or as offsets
// from the upper-state electronic term energy; offsets are resolved against
// the loaded constants at load time.
struct RunConfig {
    std::filesystem::path constants_file;

    LaserField laser;
    BeamParameters beam;

    double T_kelvin = 1000.0;
    int max_nu = 10;
    int max_J = 100;

    ScanSettings scan;
    Wavenumber lines_window{0.6};  // half-width of the lines report window

    HistogramSettings histogram;

    std::filesystem::path output_dir = ".";

    Molecule molecule;  // loaded from constants_file
};

// Parses the INI-style config file, loads the molecule constants (paths are
// resolved relative to the config location), validates every block, and
// returns the ready-to-use configuration. Throws config_error.
RunConfig load_run_config(const std::filesystem::path& path);

// Parses "nu,J,M" (as accepted by the --state flag and the beam block).
// Throws config_error.
RovibronicLevel parse_state_triplet(const std::string& text);

}  // namespace rovodef
