#include "rovodef/commands.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <sstream>
#include <string>

#include "rovodef/beam.hpp"
#include "rovodef/csv.hpp"
#include "rovodef/errors.hpp"
#include "rovodef/interaction.hpp"
#include "rovodef/molecule.hpp"
#include "rovodef/morse.hpp"

namespace rovodef {

namespace {

constexpr ExecPolicy kCmdPolicy = ExecPolicy::openmp;

// Dominant-line search window shared by the deflect and beam commands; wide
// enough that any state deflecting above the default angular floor has its
// line inside it.
constexpr double kDominantWindowCm1 = 2.0;

struct Setup {
    MorseWell f_well, e_well;
    RadialGrid grid;
    OverlapMatrix fc;
    std::vector<LevelEntry> f_levels;
    ThermalEnsemble ensemble;
};

// Largest upper nu whose band can reach laser + window from any enumerated
// lower level (rotational terms of the upper state only raise the frequency).
int upper_nu_cap(const RunConfig& cfg, const MorseWell& e_well,
                 const std::vector<LevelEntry>& f_levels, Wavenumber ref_omega,
                 double window_cm1) {
    const double f_top = f_levels.back().energy.cm1;
    const double need = ref_omega.cm1 + window_cm1 - cfg.molecule.e.E_el.cm1 + f_top -
                        cfg.molecule.f.E_el.cm1;
    int cap = 0;
    while (cap < e_well.nu_max && cfg.molecule.e.G_v(cap + 1).cm1 <= need) ++cap;
    return cap;
}

Setup make_setup(const RunConfig& cfg, Wavenumber ref_omega, double window_cm1,
                 ExecPolicy policy) {
    Setup s;
    s.f_well = MorseWell::from_constants(cfg.molecule.f);
    s.e_well = MorseWell::from_constants(cfg.molecule.e);
    s.grid = overlap_grid(s.f_well, s.e_well);
    s.f_levels = enumerate_levels(cfg.molecule.f, cfg.max_nu, cfg.max_J);
    s.ensemble = thermal_weights(s.f_levels, cfg.T_kelvin);
    s.ensemble.max_nu = cfg.max_nu;
    s.ensemble.max_J = cfg.max_J;
    const int nu_up = upper_nu_cap(cfg, s.e_well, s.f_levels, ref_omega, window_cm1);
    s.fc = overlap_matrix(s.f_well, s.e_well, cfg.max_nu - 1, nu_up, s.grid, policy);
    check_grid_convergence(s.f_well, s.e_well, s.fc);
    return s;
}

std::filesystem::path out_dir_for(const RunConfig& cfg, const CommandOverrides& ov) {
    return ov.out_dir.value_or(cfg.output_dir);
}

}  // namespace

void cmd_levels(const RunConfig& cfg, const CommandOverrides& ov, std::ostream& os) {
    const auto levels = enumerate_levels(cfg.molecule.f, cfg.max_nu, cfg.max_J);
    const auto ens = thermal_weights(levels, cfg.T_kelvin);

    CsvWriter w(out_dir_for(cfg, ov) / "levels.csv");
    w.line(csv_format_version);
    w.line("state,nu,J,M,energy_cm1,weight");
    double w_ground = 0.0;
    for (std::size_t i = 0; i < ens.levels.size(); ++i) {
        const auto& le = ens.levels[i];
        w.linef("%s,%d,%d,%d,%.12g,%.12g", le.level.state.c_str(), le.level.nu, le.level.J,
                le.level.M, le.energy.cm1, ens.weights[i]);
        if (le.level.nu == 0 && le.level.J == 0 && le.level.M == 0)
            w_ground = ens.weights[i];
    }
    w.commit();

    os << "levels.csv: " << ens.levels.size() << " levels of " << cfg.molecule.f.label
       << " (nu < " << cfg.max_nu << ", J < " << cfg.max_J << ") at T = " << cfg.T_kelvin
       << " K\n";
    os << "ground-state (0,0,0) weight: " << w_ground << "\n";
}

void cmd_lines(const RunConfig& cfg, const CommandOverrides& ov, std::ostream& os) {
    const Setup s = make_setup(cfg, cfg.laser.omega, cfg.lines_window.cm1, kCmdPolicy);
    const auto lines = build_line_list(cfg.molecule, s.fc, s.f_levels, cfg.laser,
                                       cfg.lines_window);
    const SpacingStats st = line_spacing_stats(lines, cfg.laser.omega);

    CsvWriter w(out_dir_for(cfg, ov) / "lines.csv");
    w.line(csv_format_version);
    w.linef("# %d lines within %.6g cm-1 of %.12g cm-1", static_cast<int>(lines.size()),
            cfg.lines_window.cm1, cfg.laser.omega.cm1);
    w.linef("# %d distinct positions, min adjacent spacing %.6g cm-1", st.n_positions,
            st.min_all_cm1);
    w.linef("# %d strong positions (coupling >= %.2g of peak within +-%.3g cm-1), "
            "min spacing %.6g cm-1",
            st.n_strong, st.strong_floor_frac, st.core_halfwidth_cm1, st.min_strong_cm1);
    w.line("frequency_cm1,delta_cm1,lower_nu,lower_J,lower_M,upper_nu,upper_J,fc,L,S,"
           "Gamma_cm1,g_cm1");
    for (const auto& line : lines)
        w.linef("%.12g,%.12g,%d,%d,%d,%d,%d,%.12g,%.12g,%.12g,%.12g,%.12g", line.frequency.cm1,
                line.delta.cm1, line.lower.nu, line.lower.J, line.lower.M, line.upper.nu,
                line.upper.J, line.fc, line.L, line.S, line.Gamma.cm1, line.g.cm1);
    w.commit();

    os << "lines.csv: " << lines.size() << " lines within " << cfg.lines_window.cm1
       << " cm-1 of the laser\n";
    os << "distinct positions: " << st.n_positions << ", min adjacent spacing: " << st.min_all_cm1
       << " cm-1\n";
    os << "strong positions: " << st.n_strong << ", min adjacent spacing: " << st.min_strong_cm1
       << " cm-1\n";
}

void cmd_scan(const RunConfig& cfg, const CommandOverrides& ov, std::ostream& os) {
    const Wavenumber center = (cfg.scan.lo + cfg.scan.hi) / 2.0;
    const double half = 0.5 * (cfg.scan.hi - cfg.scan.lo).cm1;
    const Setup s = make_setup(cfg, center, half + 0.6, kCmdPolicy);
    const auto points = scan_frequencies(cfg.molecule, s.fc, s.f_levels, cfg.laser, cfg.scan,
                                         cfg.beam.v0_m_s, cfg.molecule.total_mass_kg(),
                                         kCmdPolicy);

    std::size_t n_masked = 0;
    for (const auto& p : points) n_masked += p.masked ? 1 : 0;

    CsvWriter w(out_dir_for(cfg, ov) / "scan.csv");
    w.line(csv_format_version);
    w.linef("# %d frequencies in [%.12g, %.12g] cm-1, angle floor %.6g rad", cfg.scan.n_points,
            cfg.scan.lo.cm1, cfg.scan.hi.cm1, cfg.scan.alpha_floor_rad);
    w.line("omega_cm1,state_nu,state_J,state_M,alpha_rad,masked,g_cm1,delta_cm1,upper_nu,"
           "upper_J");
    for (const auto& p : points)
        w.linef("%.12g,%d,%d,%d,%.12g,%d,%.12g,%.12g,%d,%d", p.omega_cm1, p.nu, p.J, p.M,
                p.alpha_rad, p.masked ? 1 : 0, p.g_cm1, p.delta_cm1, p.upper_nu, p.upper_J);
    w.commit();

    os << "scan.csv: " << points.size() << " points over " << cfg.scan.n_points
       << " frequencies (" << n_masked << " masked)\n";
}

void cmd_deflect(const RunConfig& cfg, const CommandOverrides& ov, std::ostream& os) {
    RovibronicLevel state = ov.state.value_or(cfg.beam.initial_state);
    state.state = cfg.molecule.f.label;
    state.Omega = cfg.molecule.f.Omega;

    const Setup s = make_setup(cfg, cfg.laser.omega, kDominantWindowCm1, kCmdPolicy);
    const LevelEntry* entry = nullptr;
    for (const auto& le : s.f_levels)
        if (le.level.nu == state.nu && le.level.J == state.J && le.level.M == state.M) {
            entry = &le;
            break;
        }
    if (!entry)
        throw config_error("deflect: state (" + std::to_string(state.nu) + "," +
                           std::to_string(state.J) + "," + std::to_string(state.M) +
                           ") is outside the enumerated ensemble");

    const std::vector<LevelEntry> one{*entry};
    const auto lines = build_line_list(cfg.molecule, s.fc, one, cfg.laser,
                                       Wavenumber{kDominantWindowCm1});
    const auto dom = select_dominant_transition(lines, cfg.laser.omega);
    if (!dom)
        throw physics_error("deflect: state has no dipole-allowed line within " +
                            std::to_string(kDominantWindowCm1) + " cm-1 of the laser");

    const double mass = cfg.molecule.total_mass_kg();
    const DeflectionRecord rec = deflection_angle(*dom, cfg.laser, cfg.beam.v0_m_s, mass);
    const DressedParams dp{dom->g, dom->delta, dom->Gamma, true};
    const double p_em = spontaneous_emission_probability(dp, cfg.laser, cfg.beam.v0_m_s,
                                                         cfg.beam.z_phase_2kz, cfg.beam.n_steps);
    const double transit_s = cfg.laser.effective_length_m() / cfg.beam.v0_m_s;
    const double recoil_angle = rec.recoil_velocity_m_s / cfg.beam.v0_m_s;

    CsvWriter w(out_dir_for(cfg, ov) / "deflect.csv");
    w.line(csv_format_version);
    w.line("nu,J,M,upper_nu,upper_J,line_cm1,delta_cm1,Gamma_cm1,g_cm1,alpha_rad,"
           "recoil_angle_rad,transit_s,p_emission,raman_nath_bound_rad,raman_nath_ok");
    w.linef("%d,%d,%d,%d,%d,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%d", state.nu,
            state.J, state.M, dom->upper.nu, dom->upper.J, dom->frequency.cm1, dom->delta.cm1,
            dom->Gamma.cm1, dom->g.cm1, rec.alpha_rad, recoil_angle, transit_s, p_em,
            rec.raman_nath_bound_rad, rec.raman_nath_ok ? 1 : 0);
    w.commit();

    os << "state " << cfg.molecule.f.label << "(nu=" << state.nu << ", J=" << state.J
       << ", M=" << state.M << ")\n";
    os << "dominant line: " << cfg.molecule.e.label << "(nu'=" << dom->upper.nu
       << ", J'=" << dom->upper.J << ") at " << dom->frequency.cm1 << " cm-1\n";
    os << "Gamma = " << dom->Gamma.cm1 << " cm-1\n";
    os << "g = " << dom->g.cm1 << " cm-1\n";
    os << "delta = " << dom->delta.cm1 << " cm-1\n";
    os << "alpha = " << rec.alpha_rad << " rad\n";
    os << "recoil reference angle = " << recoil_angle << " rad\n";
    os << "transit time = " << transit_s << " s\n";
    os << "spontaneous emission probability = " << p_em << "\n";
    os << "Raman-Nath bound lambda/l = " << rec.raman_nath_bound_rad
       << " rad, satisfied: " << (rec.raman_nath_ok ? "yes" : "no") << "\n";
}

void cmd_beam(const RunConfig& cfg, const CommandOverrides& ov, std::ostream& os) {
    BeamParameters beam = cfg.beam;
    if (ov.seed) beam.rng_seed = *ov.seed;
    if (ov.state) {
        beam.selection = StateSelection::single;
        beam.initial_state = *ov.state;
        beam.initial_state.state = cfg.molecule.f.label;
        beam.initial_state.Omega = cfg.molecule.f.Omega;
    }

    const Setup s = make_setup(cfg, cfg.laser.omega, kDominantWindowCm1, kCmdPolicy);
    const EnsembleResult res = simulate_beam(cfg.molecule, s.fc, s.ensemble, cfg.laser, beam,
                                             cfg.histogram, kCmdPolicy);

    CsvWriter w(out_dir_for(cfg, ov) / "histogram.csv");
    w.line(csv_format_version);
    w.linef("# %d molecules, seed %llu", beam.n_molecules,
            static_cast<unsigned long long>(beam.rng_seed));
    std::string header = "bin_lo_rad,bin_hi_rad,count_total";
    for (const auto& [key, counts] : res.histogram.by_state)
        header += ",count_state_" + std::to_string(key.nu) + "_" + std::to_string(key.J) + "_" +
                  std::to_string(key.M);
    w.line(header);
    const int n_bins = static_cast<int>(res.histogram.total.size());
    for (int b = 0; b < n_bins; ++b) {
        std::ostringstream row;
        row.precision(12);
        row << res.histogram.edges[static_cast<std::size_t>(b)] << ","
            << res.histogram.edges[static_cast<std::size_t>(b) + 1] << ","
            << res.histogram.total[static_cast<std::size_t>(b)];
        for (const auto& [key, counts] : res.histogram.by_state)
            row << "," << counts[static_cast<std::size_t>(b)];
        w.line(row.str());
    }
    w.commit();

    if (ov.dump_trajectories) {
        CsvWriter t(out_dir_for(cfg, ov) / "trajectories.csv");
        t.line(csv_format_version);
        t.line("molecule,nu,J,M,v_x_m_s,z_phase_2kz,v_z_m_s,alpha_rad,n_emissions,interrupted,"
               "recoil_kick_m_s,displacement_m,raman_nath_ok");
        for (std::size_t m = 0; m < res.trajectories.size(); ++m) {
            const auto& r = res.trajectories[m];
            t.linef("%zu,%d,%d,%d,%.12g,%.12g,%.12g,%.12g,%d,%d,%.12g,%.12g,%d", m, r.initial.nu,
                    r.initial.J, r.initial.M, r.v_x_m_s, r.z_phase_2kz, r.v_z_m_s, r.alpha_rad,
                    r.n_emissions, r.interrupted ? 1 : 0, r.recoil_kick_m_s, r.displacement_m,
                    r.raman_nath_ok ? 1 : 0);
        }
        t.commit();
    }

    std::size_t n_interrupted = 0;
    double mean_alpha = 0.0;
    for (const auto& r : res.trajectories) {
        n_interrupted += r.interrupted ? 1 : 0;
        mean_alpha += r.alpha_rad;
    }
    mean_alpha /= static_cast<double>(res.trajectories.size());
    os << "histogram.csv: " << beam.n_molecules << " molecules, "
       << res.histogram.by_state.size() << " initial states, " << n_interrupted
       << " interrupted by emission\n";
    os << "mean deflection angle = " << mean_alpha << " rad\n";
}

}  // namespace rovodef
