#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "rovodef/commands.hpp"
#include "rovodef/config.hpp"
#include "rovodef/errors.hpp"

namespace {

struct CliOptions {
    std::string config_path;
    std::string out_dir;
    std::string state;
    std::uint64_t seed = 0;
    bool has_seed = false;
    bool dump_trajectories = false;
};

void add_common(CLI::App* cmd, CliOptions& opt) {
    cmd->add_option("--config", opt.config_path, "run configuration file")->required();
    cmd->add_option("--out", opt.out_dir, "output directory (overrides the config)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"rovodef: state-selective deflection of a molecular beam by a "
                 "far-off-resonant standing wave"};
    app.require_subcommand(1);

    CliOptions opt;
    auto* levels = app.add_subcommand("levels", "enumerate thermal rovibronic levels");
    auto* lines = app.add_subcommand("lines", "line list near the laser frequency");
    auto* scan = app.add_subcommand("scan", "deflection angle versus laser frequency");
    auto* deflect = app.add_subcommand("deflect", "single-state deflection report");
    auto* beam = app.add_subcommand("beam", "Monte Carlo beam histogram");
    for (auto* cmd : {levels, lines, scan, deflect, beam}) add_common(cmd, opt);
    for (auto* cmd : {deflect, beam})
        cmd->add_option("--state", opt.state, "initial state as nu,J,M");
    beam->add_option("--seed", opt.seed, "random seed (overrides the config)");
    beam->add_flag("--dump-trajectories", opt.dump_trajectories,
                   "also write per-molecule trajectories.csv");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? 0 : 2;
    }
    opt.has_seed = beam->count("--seed") > 0;

    try {
        const rovodef::RunConfig cfg = rovodef::load_run_config(opt.config_path);
        rovodef::CommandOverrides ov;
        if (!opt.out_dir.empty()) ov.out_dir = opt.out_dir;
        if (!opt.state.empty()) ov.state = rovodef::parse_state_triplet(opt.state);
        if (opt.has_seed) ov.seed = opt.seed;
        ov.dump_trajectories = opt.dump_trajectories;

        if (levels->parsed()) rovodef::cmd_levels(cfg, ov, std::cout);
        else if (lines->parsed()) rovodef::cmd_lines(cfg, ov, std::cout);
        else if (scan->parsed()) rovodef::cmd_scan(cfg, ov, std::cout);
        else if (deflect->parsed()) rovodef::cmd_deflect(cfg, ov, std::cout);
        else if (beam->parsed()) rovodef::cmd_beam(cfg, ov, std::cout);
        return 0;
    } catch (const rovodef::config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const rovodef::physics_error& e) {
        std::cerr << "physics error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
