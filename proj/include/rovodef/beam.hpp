#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <vector>

#include "rovodef/exec.hpp"
#include "rovodef/interaction.hpp"
#include "rovodef/molecule.hpp"
#include "rovodef/units.hpp"

namespace rovodef {

// Deterministic per-molecule random stream: stream index mixed into the seed
// with splitmix64, driving mt19937_64. Identical draws for a given
// (seed, index) pair regardless of thread count or call order. Uniform and
// normal variates are generated by hand (53-bit mantissa, Box-Muller) so the
// byte-level output does not depend on the standard library.
class MoleculeRng {
public:
    MoleculeRng(std::uint64_t seed, std::uint64_t index);
    double uniform();  // [0, 1)
    double normal();   // standard normal, Box-Muller pair used in order
private:
    std::mt19937_64 eng_;
    double cached_ = 0.0;
    bool have_cached_ = false;
};

enum class StateSelection {
    single,    // every molecule starts in beam.initial_state
    thermal,   // sample the full truncated thermal ensemble
    affected,  // thermal weights renormalized over deflected states only
};

struct BeamParameters {
    double v0_m_s = 500.0;
    double sigma_v_rel = 0.0;
    double z_phase_2kz = 1.5707963267948966;  // mean standing-wave phase 2kz
    double delta_z_m = 0.0;                   // position spread (sigma)
    bool diffraction_kick = true;             // applied when delta_z > 0
    int n_molecules = 1;
    std::uint64_t rng_seed = 1;
    int n_steps = 4096;                       // per transit; >= 2000 enforced
    bool emission_enabled = true;
    double emission_rate_scale = 1.0;         // diagnostic boost, 1 = physical
    StateSelection selection = StateSelection::single;
    RovibronicLevel initial_state{};          // for StateSelection::single
    double alpha_floor_rad = 1e-6;            // "affected" threshold

    void validate() const;
};

struct TrajectoryResult {
    RovibronicLevel initial;
    double v_x_m_s = 0.0;
    double z_phase_2kz = 0.0;
    double v_z_m_s = 0.0;
    double alpha_rad = 0.0;  // v_z / v_x by definition
    int n_emissions = 0;
    bool interrupted = false;
    double recoil_kick_m_s = 0.0;
    double displacement_m = 0.0;  // accumulated transverse displacement
    bool raman_nath_ok = true;
};

// Dressed two-level parameters of one lower state at the working frequency.
struct DressedParams {
    Wavenumber g;
    Wavenumber delta;
    Wavenumber Gamma;
    bool has_line = false;
};

// hbar / (2 M delta_z); delta_z = 0 means "no localization", returns 0.
double diffraction_width(double delta_z_m, double mass_kg);

// P = integral Gamma rho_ee dt along the transit at fixed standing-wave
// phase, with rho_ee = g^2 f^2 / (delta^2 + 2 g^2 f^2 + Gamma^2/4).
double spontaneous_emission_probability(const DressedParams& dp, const LaserField& laser,
                                        double v_x_m_s, double z_phase_2kz,
                                        int n_steps = 4096);

// Integrates M dv_z/dt = -dE_dress/dz with z frozen (Raman-Nath), over
// t in [-4w/v_x, +4w/v_x]. When rng is non-null, spontaneous emission is
// drawn each step; an emission switches the coherent force off and applies
// one signed recoil kick.
TrajectoryResult integrate_trajectory(const DressedParams& dp, const LaserField& laser,
                                      const BeamParameters& beam, double v_x_m_s,
                                      double z_phase_2kz, double mass_kg,
                                      MoleculeRng* rng = nullptr);

struct StateKey {
    int nu = 0;
    int J = 0;
    int M = 0;
    auto operator<=>(const StateKey&) const = default;
};

struct DetectorHistogram {
    std::vector<double> edges;                        // n_bins + 1, ascending
    std::vector<long> total;                          // n_bins
    std::map<StateKey, std::vector<long>> by_state;   // per initial state
};

struct HistogramSettings {
    double lo_rad = -1.5e-4;
    double hi_rad = 1.5e-4;
    int n_bins = 150;  // out-of-range angles clamp into the edge bins
};

struct EnsembleResult {
    std::vector<TrajectoryResult> trajectories;  // index = molecule index
    DetectorHistogram histogram;
};

// Parallel kernel: full Monte Carlo beam. Per molecule: sample initial state
// from the ensemble weights (per the selection mode), v_x ~ N(v0,
// sigma_v_rel v0), z phase ~ N(z_phase, 2k delta_z), optional diffraction
// kick v_z ~ N(0, hbar/(2M delta_z)); integrate the trajectory with emission
// draws; histogram final angles by initial state.
EnsembleResult simulate_beam(const Molecule& mol, const OverlapMatrix& fc,
                             const ThermalEnsemble& ensemble, const LaserField& laser,
                             const BeamParameters& beam, const HistogramSettings& hist,
                             ExecPolicy policy = ExecPolicy::serial);

}  // namespace rovodef
