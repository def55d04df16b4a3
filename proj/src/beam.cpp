#include "rovodef/beam.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <numbers>
#include <string>

#include "rovodef/errors.hpp"

namespace rovodef {

namespace {

std::uint64_t splitmix64_next(std::uint64_t& s) {
    s += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = s;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace

MoleculeRng::MoleculeRng(std::uint64_t seed, std::uint64_t index) : eng_(0) {
    std::uint64_t s = seed;
    (void)splitmix64_next(s);
    s ^= 0xD1B54A32D192ED03ULL * (index + 1);
    eng_.seed(splitmix64_next(s));
}

double MoleculeRng::uniform() {
    return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
}

double MoleculeRng::normal() {
    if (have_cached_) {
        have_cached_ = false;
        return cached_;
    }
    double u1 = 0.0;
    do {
        u1 = uniform();
    } while (u1 <= 0.0);
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double t = 2.0 * std::numbers::pi * u2;
    cached_ = r * std::sin(t);
    have_cached_ = true;
    return r * std::cos(t);
}

void BeamParameters::validate() const {
    if (!(v0_m_s > 0.0)) throw config_error("beam: v0 must be > 0");
    if (sigma_v_rel < 0.0) throw config_error("beam: sigma_v_rel must be >= 0");
    if (delta_z_m < 0.0) throw config_error("beam: delta_z must be >= 0");
    if (n_molecules < 1) throw config_error("beam: n_molecules must be >= 1");
    if (n_steps < 2000)
        throw config_error("beam: n_steps must be >= 2000 for a converged transit integral");
    if (emission_rate_scale < 0.0) throw config_error("beam: emission_rate_scale must be >= 0");
    if (alpha_floor_rad < 0.0) throw config_error("beam: alpha_floor_rad must be >= 0");
}

double diffraction_width(double delta_z_m, double mass_kg) {
    if (delta_z_m < 0.0) throw physics_error("diffraction width: delta_z must be >= 0");
    if (!(mass_kg > 0.0)) throw physics_error("diffraction width: mass must be > 0");
    if (delta_z_m == 0.0) return 0.0;  // no localization, classical limit
    return constants::hbar / (2.0 * mass_kg * delta_z_m);
}

double spontaneous_emission_probability(const DressedParams& dp, const LaserField& laser,
                                        double v_x_m_s, double z_phase_2kz, int n_steps) {
    laser.validate();
    if (!(v_x_m_s > 0.0))
        throw physics_error("emission probability: longitudinal velocity must be > 0");
    if (n_steps < 2) throw physics_error("emission probability: need at least 2 steps");
    if (!dp.has_line) return 0.0;

    const double g = dp.g.rad_s();
    const double delta = dp.delta.rad_s();
    const double Gamma = dp.Gamma.rad_s();
    const double w = laser.waist_m;
    const double t_half = 4.0 * w / v_x_m_s;
    const double dt = 2.0 * t_half / n_steps;
    const double cos2 = 0.5 * (1.0 + std::cos(z_phase_2kz));  // cos^2(kz)

    double sum = 0.0;
    for (int i = 0; i <= n_steps; ++i) {
        const double t = -t_half + dt * i;
        const double env = std::exp(-(v_x_m_s * t) * (v_x_m_s * t) / (2.0 * w * w));
        const double gf2 = g * g * env * env * cos2;
        const double rho = gf2 / (delta * delta + 2.0 * gf2 + 0.25 * Gamma * Gamma);
        const double weight = (i == 0 || i == n_steps) ? 0.5 : 1.0;
        sum += weight * Gamma * rho;
    }
    return sum * dt;
}

TrajectoryResult integrate_trajectory(const DressedParams& dp, const LaserField& laser,
                                      const BeamParameters& beam, double v_x_m_s,
                                      double z_phase_2kz, double mass_kg, MoleculeRng* rng) {
    laser.validate();
    beam.validate();
    if (!(v_x_m_s > 0.0)) throw physics_error("trajectory: longitudinal velocity must be > 0");
    if (!(mass_kg > 0.0)) throw physics_error("trajectory: mass must be > 0");

    TrajectoryResult res;
    res.v_x_m_s = v_x_m_s;
    res.z_phase_2kz = z_phase_2kz;
    if (!dp.has_line) return res;  // no coupled line: ballistic transit

    if (!is_nonresonant(dp.g, dp.delta))
        throw physics_error("trajectory: dressed-potential model requires |delta| > 10 g "
                            "(delta = " + std::to_string(dp.delta.cm1) + " cm-1, g = " +
                            std::to_string(dp.g.cm1) + " cm-1)");

    const double g = dp.g.rad_s();
    const double delta = dp.delta.rad_s();
    const double Gamma = dp.Gamma.rad_s();
    const double sgn = dp.delta.cm1 < 0.0 ? -1.0 : 1.0;
    const double k = laser.wavevector_inv_m();
    const double w = laser.waist_m;
    const double t_half = 4.0 * w / v_x_m_s;
    const int n = beam.n_steps;
    const double dt = 2.0 * t_half / n;
    const double sin_phi = std::sin(z_phase_2kz);
    const double cos2 = 0.5 * (1.0 + std::cos(z_phase_2kz));  // cos^2(kz)
    const double v_rec = photon_recoil_velocity(laser.wavelength_m(), mass_kg);

    // F_z = -dE_dress/dz at frozen z: hbar sgn(delta) g^2 F(t)^2 k sin(2kz)
    //       / (2 sqrt(g^2 F^2 cos^2(kz) + delta^2/4)).
    auto envelope2 = [&](double t) {
        const double e = std::exp(-(v_x_m_s * t) * (v_x_m_s * t) / (2.0 * w * w));
        return e * e;
    };
    auto accel = [&](double t) {
        const double F2 = envelope2(t);
        return constants::hbar * sgn * g * g * F2 * k * sin_phi /
               (2.0 * std::sqrt(g * g * F2 * cos2 + 0.25 * delta * delta) * mass_kg);
    };
    auto rho_ee = [&](double t) {
        const double gf2 = g * g * envelope2(t) * cos2;
        return gf2 / (delta * delta + 2.0 * gf2 + 0.25 * Gamma * Gamma);
    };

    const bool emit_draws = rng != nullptr && beam.emission_enabled;
    bool force_on = true;
    double v_z = 0.0, disp = 0.0;
    double a_prev = accel(-t_half);
    for (int i = 0; i < n; ++i) {
        const double t0 = -t_half + dt * i;
        if (force_on && emit_draws) {
            const double p = beam.emission_rate_scale * Gamma * rho_ee(t0) * dt;
            if (rng->uniform() < p) {
                res.n_emissions = 1;
                res.interrupted = true;
                const double kick = (rng->uniform() < 0.5 ? 1.0 : -1.0) * v_rec;
                v_z += kick;
                res.recoil_kick_m_s = kick;
                force_on = false;
            }
        }
        const double v_old = v_z;
        if (force_on) {
            const double a_next = accel(t0 + dt);
            v_z += 0.5 * (a_prev + a_next) * dt;
            a_prev = a_next;
        }
        disp += 0.5 * (v_old + v_z) * dt;
    }

    res.v_z_m_s = v_z;
    res.alpha_rad = v_z / v_x_m_s;
    res.displacement_m = disp;
    res.raman_nath_ok = std::fabs(disp) < laser.wavelength_m() / 10.0;

    if (res.n_emissions == 0) {
        // Linearized-impulse bound on the accumulated velocity; a violation
        // means the fixed-step integration went unstable.
        const double bound = constants::hbar * g * g * k * std::sqrt(std::numbers::pi) * w /
                             (std::fabs(delta) * mass_kg * v_x_m_s);
        if (std::fabs(v_z) > 1.01 * bound)
            throw physics_error("trajectory: integrator instability, |v_z| exceeds the impulse "
                                "bound");
    }
    return res;
}

EnsembleResult simulate_beam(const Molecule& mol, const OverlapMatrix& fc,
                             const ThermalEnsemble& ensemble, const LaserField& laser,
                             const BeamParameters& beam, const HistogramSettings& hist,
                             ExecPolicy policy) {
    laser.validate();
    beam.validate();
    if (hist.n_bins < 1) throw config_error("histogram: need at least 1 bin");
    if (!(hist.lo_rad < hist.hi_rad)) throw config_error("histogram: lower edge must be < upper");
    if (ensemble.levels.empty()) throw physics_error("beam: empty level ensemble");
    if (ensemble.levels.size() != ensemble.weights.size())
        throw physics_error("beam: ensemble weights do not match levels");

    const double mass = mol.total_mass_kg();
    const std::size_t n_states = ensemble.levels.size();

    // Dominant dressed parameters per state at the working frequency. States
    // whose nearest line lies beyond this window deflect below the default
    // angular floor and are treated as ballistic.
    const auto lines = build_line_list(mol, fc, ensemble.levels, laser, Wavenumber{2.0});
    std::map<StateKey, std::vector<TransitionLine>> by_state;
    for (const auto& line : lines)
        by_state[{line.lower.nu, line.lower.J, line.lower.M}].push_back(line);

    std::vector<DressedParams> dps(n_states);
    std::vector<double> alpha0(n_states, 0.0);  // closed-form angle at v0
    const double v_rec0 = photon_recoil_velocity(laser.wavelength_m(), mass);
    const double l_eff = laser.effective_length_m();
    for (std::size_t i = 0; i < n_states; ++i) {
        const auto& lv = ensemble.levels[i].level;
        const auto it = by_state.find({lv.nu, lv.J, lv.M});
        if (it == by_state.end()) continue;
        const auto dom = select_dominant_transition(it->second, laser.omega);
        dps[i] = {dom->g, dom->delta, dom->Gamma, true};
        if (dom->delta.cm1 != 0.0 && is_nonresonant(dom->g, dom->delta)) {
            const double g_rad = dom->g.rad_s(), d_rad = dom->delta.rad_s();
            alpha0[i] = v_rec0 * g_rad * g_rad * l_eff /
                        (beam.v0_m_s * beam.v0_m_s * d_rad);
        }
    }

    // Selection weights over states.
    std::vector<double> weights;
    std::size_t single_index = 0;
    if (beam.selection == StateSelection::single) {
        bool found = false;
        for (std::size_t i = 0; i < n_states; ++i) {
            const auto& lv = ensemble.levels[i].level;
            if (lv.nu == beam.initial_state.nu && lv.J == beam.initial_state.J &&
                lv.M == beam.initial_state.M) {
                single_index = i;
                found = true;
                break;
            }
        }
        if (!found)
            throw config_error("beam: initial state (" + std::to_string(beam.initial_state.nu) +
                               "," + std::to_string(beam.initial_state.J) + "," +
                               std::to_string(beam.initial_state.M) +
                               ") is outside the enumerated ensemble");
        if (dps[single_index].has_line &&
            !is_nonresonant(dps[single_index].g, dps[single_index].delta))
            throw physics_error("beam: the selected state is resonant with the laser "
                                "(|delta| <= 10 g)");
    } else {
        weights = ensemble.weights;
        if (beam.selection == StateSelection::affected) {
            // Renormalize over coherently deflected states only; resonant and
            // undeflected states are excluded.
            for (std::size_t i = 0; i < n_states; ++i)
                if (std::fabs(alpha0[i]) < beam.alpha_floor_rad) weights[i] = 0.0;
        }
        double total = 0.0;
        for (double w : weights) total += w;
        if (!(total > 0.0))
            throw physics_error("beam: no state is deflected above the angular floor at this "
                                "frequency");
        double acc = 0.0;
        for (double& w : weights) {
            acc += w;
            w = acc;  // cumulative
        }
    }

    std::vector<TrajectoryResult> traj(static_cast<std::size_t>(beam.n_molecules));
    const double phase_sigma = 2.0 * laser.wavevector_inv_m() * beam.delta_z_m;
    const double kick_sigma =
        beam.diffraction_kick ? diffraction_width(beam.delta_z_m, mass) : 0.0;

    std::atomic<bool> failed{false};
    std::exception_ptr first_error = nullptr;
    const bool par = policy == ExecPolicy::openmp;
#pragma omp parallel for schedule(static) if (par)
    for (int m = 0; m < beam.n_molecules; ++m) {
        if (failed.load(std::memory_order_relaxed)) continue;
        try {
            MoleculeRng rng(beam.rng_seed, static_cast<std::uint64_t>(m));
            std::size_t si = single_index;
            if (beam.selection != StateSelection::single) {
                const double u = rng.uniform() * weights.back();
                si = static_cast<std::size_t>(
                    std::lower_bound(weights.begin(), weights.end(), u) - weights.begin());
                if (si >= n_states) si = n_states - 1;
            }
            double v_x = beam.v0_m_s;
            if (beam.sigma_v_rel > 0.0) {
                int tries = 0;
                do {
                    v_x = beam.v0_m_s * (1.0 + beam.sigma_v_rel * rng.normal());
                } while (v_x <= 0.0 && ++tries < 100);
                if (v_x <= 0.0)
                    throw physics_error("beam: velocity sampling failed to produce v_x > 0");
            }
            double phase = beam.z_phase_2kz;
            if (beam.delta_z_m > 0.0) phase += phase_sigma * rng.normal();
            double kick = 0.0;
            if (kick_sigma > 0.0) kick = kick_sigma * rng.normal();

            TrajectoryResult r =
                integrate_trajectory(dps[si], laser, beam, v_x, phase, mass, &rng);
            r.initial = ensemble.levels[si].level;
            r.v_z_m_s += kick;
            r.alpha_rad = r.v_z_m_s / v_x;
            traj[static_cast<std::size_t>(m)] = r;
        } catch (...) {
            bool expected = false;
            if (failed.compare_exchange_strong(expected, true))
                first_error = std::current_exception();
        }
    }
    if (failed.load()) std::rethrow_exception(first_error);

    EnsembleResult result;
    result.histogram.edges.resize(static_cast<std::size_t>(hist.n_bins) + 1);
    const double bw = (hist.hi_rad - hist.lo_rad) / hist.n_bins;
    for (int b = 0; b <= hist.n_bins; ++b)
        result.histogram.edges[static_cast<std::size_t>(b)] = hist.lo_rad + bw * b;
    result.histogram.total.assign(static_cast<std::size_t>(hist.n_bins), 0);
    for (const auto& r : traj) {
        int b = static_cast<int>(std::floor((r.alpha_rad - hist.lo_rad) / bw));
        b = std::clamp(b, 0, hist.n_bins - 1);  // out-of-range clamps to edge bins
        result.histogram.total[static_cast<std::size_t>(b)] += 1;
        const StateKey key{r.initial.nu, r.initial.J, r.initial.M};
        auto& counts = result.histogram.by_state[key];
        if (counts.empty()) counts.assign(static_cast<std::size_t>(hist.n_bins), 0);
        counts[static_cast<std::size_t>(b)] += 1;
    }
    result.trajectories = std::move(traj);
    return result;
}

}  // namespace rovodef
