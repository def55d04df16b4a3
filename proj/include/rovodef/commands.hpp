#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>

#include "rovodef/config.hpp"

namespace rovodef {

// Implementations of the CLI commands, kept in the library so tests can call
// them directly. Each writes CSV files into out_dir (atomically) and a short
// summary to the stream. Overrides mirror the CLI flags.
struct CommandOverrides {
    std::optional<std::filesystem::path> out_dir;
    std::optional<std::uint64_t> seed;
    std::optional<RovibronicLevel> state;
    bool dump_trajectories = false;
};

void cmd_levels(const RunConfig& cfg, const CommandOverrides& ov, std::ostream& os);
void cmd_lines(const RunConfig& cfg, const CommandOverrides& ov, std::ostream& os);
void cmd_scan(const RunConfig& cfg, const CommandOverrides& ov, std::ostream& os);
void cmd_deflect(const RunConfig& cfg, const CommandOverrides& ov, std::ostream& os);
void cmd_beam(const RunConfig& cfg, const CommandOverrides& ov, std::ostream& os);

}  // namespace rovodef
