#include "rovodef/interaction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <string>

#include "rovodef/errors.hpp"
#include "rovodef/rotation.hpp"

namespace rovodef {

void LaserField::validate() const {
    if (!(omega.cm1 > 0.0)) throw config_error("laser: frequency must be > 0");
    if (power_W < 0.0) throw config_error("laser: power must be >= 0");
    if (!(waist_m > 0.0)) throw config_error("laser: waist must be > 0");
}

double LaserField::effective_area_m2() const {
    return std::numbers::pi * waist_m * waist_m;
}

double LaserField::effective_length_m() const {
    return std::sqrt(effective_area_m2());
}

double LaserField::wavevector_inv_m() const {
    return 2.0 * std::numbers::pi / wavelength_m();
}

Wavenumber line_width(double dipole_Cm, double fc, Wavenumber omega_line, int J, int J_prime) {
    if (!(omega_line.cm1 > 0.0)) throw physics_error("line width: frequency must be > 0");
    const double S = honl_london(J, J_prime);
    const double w = omega_line.rad_s();
    const double c3 = constants::c * constants::c * constants::c;
    const double gamma_rad = w * w * w * dipole_Cm * dipole_Cm * fc * fc * S /
                             ((2.0 * J_prime + 1.0) * 3.0 * std::numbers::pi * constants::eps0 *
                              constants::hbar * c3);
    return Wavenumber::from_rad_s(gamma_rad);
}

Wavenumber coupling_g(Wavenumber Gamma, Wavenumber omega_line, int J_prime, double L, double S,
                      double power_W, double area_m2) {
    if (!(S > 0.0)) throw physics_error("coupling: Honl-London factor must be > 0");
    if (!(area_m2 > 0.0)) throw physics_error("coupling: effective area must be > 0");
    if (power_W < 0.0) throw physics_error("coupling: power must be >= 0");
    if (Gamma.cm1 < 0.0) throw physics_error("coupling: line width must be >= 0");
    const double lam = omega_line.wavelength_m();
    const double intensity = power_W / area_m2;
    const double pi2 = std::numbers::pi * std::numbers::pi;
    const double g2 = 3.0 * lam * lam * lam / (16.0 * pi2 * constants::hbar * constants::c) *
                      Gamma.rad_s() * ((2.0 * J_prime + 1.0) * L * L / S) * intensity;
    return Wavenumber::from_rad_s(std::sqrt(g2));
}

std::vector<TransitionLine> build_line_list(const Molecule& mol, const OverlapMatrix& fc,
                                            const std::vector<LevelEntry>& f_levels,
                                            const LaserField& laser, Wavenumber window) {
    laser.validate();
    if (window.cm1 < 0.0) throw config_error("line window must be >= 0");

    // Cache upper-level energies over the (nu', J') range reachable from the
    // given lower levels.
    int max_Jp = std::abs(mol.e.Omega);
    for (const auto& le : f_levels) {
        max_Jp = std::max(max_Jp, le.level.J + 1);
        if (le.level.nu > fc.nu_lower_max)
            throw physics_error("line list: overlap matrix does not cover nu = " +
                                std::to_string(le.level.nu));
    }
    const int n_up = fc.nu_upper_max + 1;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    std::vector<std::vector<double>> E_up(static_cast<std::size_t>(n_up),
                                          std::vector<double>(static_cast<std::size_t>(max_Jp + 1), nan));
    for (int nu_p = 0; nu_p < n_up; ++nu_p)
        for (int Jp = std::abs(mol.e.Omega); Jp <= max_Jp; ++Jp)
            E_up[static_cast<std::size_t>(nu_p)][static_cast<std::size_t>(Jp)] =
                level_energy(mol.e, nu_p, Jp, mol.e.Omega).cm1;

    const double area = laser.effective_area_m2();
    std::vector<TransitionLine> lines;
    for (const auto& le : f_levels) {
        const int J = le.level.J, M = le.level.M;
        for (const int Jp : {J - 1, J + 1}) {
            if (Jp < std::abs(mol.e.Omega) || std::abs(M) > Jp) continue;
            const double S = honl_london(J, Jp);
            const double L = l_factor(J, M, mol.f.Omega, Jp, M, mol.e.Omega);
            if (L == 0.0) continue;
            for (int nu_p = 0; nu_p < n_up; ++nu_p) {
                const Wavenumber freq{E_up[static_cast<std::size_t>(nu_p)][static_cast<std::size_t>(Jp)] -
                                      le.energy.cm1};
                if (std::fabs((freq - laser.omega).cm1) > window.cm1) continue;
                TransitionLine line;
                line.lower = le.level;
                line.upper = {mol.e.label, nu_p, Jp, M, mol.e.Omega};
                line.frequency = freq;
                line.fc = fc(le.level.nu, nu_p);
                line.S = S;
                line.L = L;
                line.Gamma = line_width(mol.dipole_Cm, line.fc, freq, J, Jp);
                line.g = coupling_g(line.Gamma, freq, Jp, L, S, laser.power_W, area);
                line.delta = freq - laser.omega;
                lines.push_back(line);
            }
        }
    }
    std::sort(lines.begin(), lines.end(), [](const TransitionLine& a, const TransitionLine& b) {
        if (a.frequency != b.frequency) return a.frequency < b.frequency;
        if (a.lower.nu != b.lower.nu) return a.lower.nu < b.lower.nu;
        if (a.lower.J != b.lower.J) return a.lower.J < b.lower.J;
        if (a.lower.M != b.lower.M) return a.lower.M < b.lower.M;
        return a.upper.nu < b.upper.nu;
    });
    return lines;
}

std::optional<TransitionLine> select_dominant_transition(
    const std::vector<TransitionLine>& lines_of_state, Wavenumber laser_omega) {
    const TransitionLine* best = nullptr;
    double best_score = -1.0, best_abs_delta = 0.0;
    for (const auto& line : lines_of_state) {
        const double d = std::fabs((line.frequency - laser_omega).cm1);
        const double score = d == 0.0 ? std::numeric_limits<double>::infinity()
                                      : line.g.cm1 / d;
        bool better = false;
        if (best == nullptr || score > best_score) {
            better = true;
        } else if (score == best_score) {
            if (d < best_abs_delta)
                better = true;
            else if (d == best_abs_delta && line.upper.nu < best->upper.nu)
                better = true;
        }
        if (better) {
            best = &line;
            best_score = score;
            best_abs_delta = d;
        }
    }
    if (!best) return std::nullopt;
    TransitionLine chosen = *best;
    chosen.delta = chosen.frequency - laser_omega;
    return chosen;
}

Wavenumber dressed_shift(Wavenumber g, Wavenumber delta, double f_mode) {
    const double s = delta.cm1 < 0.0 ? -1.0 : 1.0;
    const double root =
        std::sqrt(g.cm1 * g.cm1 * f_mode * f_mode + 0.25 * delta.cm1 * delta.cm1);
    return Wavenumber{s * (root - 0.5 * std::fabs(delta.cm1))};
}

bool is_nonresonant(Wavenumber g, Wavenumber delta, double threshold) {
    return std::fabs(delta.cm1) > threshold * g.cm1;
}

DeflectionRecord deflection_angle(const TransitionLine& line, const LaserField& laser,
                                  double v_x_m_s, double mass_kg) {
    laser.validate();
    if (!(v_x_m_s > 0.0)) throw physics_error("deflection: longitudinal velocity must be > 0");
    if (!(mass_kg > 0.0)) throw physics_error("deflection: mass must be > 0");
    const Wavenumber delta = line.detuning(laser);
    if (!is_nonresonant(line.g, delta))
        throw physics_error("deflection: nonresonance condition |delta| > 10 g violated "
                            "(delta = " + std::to_string(delta.cm1) + " cm-1, g = " +
                            std::to_string(line.g.cm1) + " cm-1)");
    DeflectionRecord rec;
    rec.recoil_velocity_m_s = photon_recoil_velocity(laser.wavelength_m(), mass_kg);
    const double l = laser.effective_length_m();
    const double g_rad = line.g.rad_s(), d_rad = delta.rad_s();
    rec.alpha_rad = rec.recoil_velocity_m_s * g_rad * g_rad * l / (v_x_m_s * v_x_m_s * d_rad);
    rec.raman_nath_bound_rad = laser.wavelength_m() / l;
    rec.raman_nath_ok = std::fabs(rec.alpha_rad) < rec.raman_nath_bound_rad;
    return rec;
}

std::vector<ScanPoint> scan_frequencies(const Molecule& mol, const OverlapMatrix& fc,
                                        const std::vector<LevelEntry>& f_levels,
                                        const LaserField& laser_template,
                                        const ScanSettings& settings, double v_x_m_s,
                                        double mass_kg, ExecPolicy policy) {
    if (settings.n_points < 2) throw config_error("scan: need at least 2 frequency points");
    if (!(settings.lo < settings.hi)) throw config_error("scan: lower bound must be < upper");
    if (settings.alpha_floor_rad < 0.0) throw config_error("scan: alpha floor must be >= 0");
    if (!(v_x_m_s > 0.0)) throw physics_error("scan: longitudinal velocity must be > 0");
    if (!(mass_kg > 0.0)) throw physics_error("scan: mass must be > 0");

    const Wavenumber center = (settings.lo + settings.hi) / 2.0;
    const Wavenumber window = (settings.hi - settings.lo) / 2.0 + Wavenumber{0.6};
    LaserField laser_center = laser_template;
    laser_center.omega = center;
    const auto lines = build_line_list(mol, fc, f_levels, laser_center, window);

    // Group lines by lower state; std::map iteration gives (nu, J, M) order.
    struct Key {
        int nu, J, M;
        bool operator<(const Key& o) const {
            if (nu != o.nu) return nu < o.nu;
            if (J != o.J) return J < o.J;
            return M < o.M;
        }
    };
    std::map<Key, std::vector<TransitionLine>> by_state;
    for (const auto& line : lines)
        by_state[{line.lower.nu, line.lower.J, line.lower.M}].push_back(line);
    std::vector<const std::vector<TransitionLine>*> groups;
    groups.reserve(by_state.size());
    for (const auto& [key, vec] : by_state) groups.push_back(&vec);

    const int n = settings.n_points;
    const double step = (settings.hi - settings.lo).cm1 / (n - 1);
    std::vector<std::vector<ScanPoint>> slots(static_cast<std::size_t>(n));

    const bool par = policy == ExecPolicy::openmp;
#pragma omp parallel for schedule(static) if (par)
    for (int i = 0; i < n; ++i) {
        const Wavenumber w_i{settings.lo.cm1 + step * i};
        LaserField las = laser_template;
        las.omega = w_i;
        const double v_rec = photon_recoil_velocity(las.wavelength_m(), mass_kg);
        const double l = las.effective_length_m();
        auto& out = slots[static_cast<std::size_t>(i)];
        for (const auto* group : groups) {
            const auto dom = select_dominant_transition(*group, w_i);
            const Wavenumber delta = dom->delta;
            const bool masked = !is_nonresonant(dom->g, delta);
            double alpha = 0.0;
            if (delta.cm1 != 0.0) {
                const double g_rad = dom->g.rad_s(), d_rad = delta.rad_s();
                alpha = v_rec * g_rad * g_rad * l / (v_x_m_s * v_x_m_s * d_rad);
            }
            if (!masked && std::fabs(alpha) < settings.alpha_floor_rad) continue;
            ScanPoint p;
            p.omega_cm1 = w_i.cm1;
            p.nu = dom->lower.nu;
            p.J = dom->lower.J;
            p.M = dom->lower.M;
            p.alpha_rad = alpha;
            p.masked = masked;
            p.g_cm1 = dom->g.cm1;
            p.delta_cm1 = delta.cm1;
            p.upper_nu = dom->upper.nu;
            p.upper_J = dom->upper.J;
            out.push_back(p);
        }
    }

    std::vector<ScanPoint> points;
    for (auto& slot : slots)
        points.insert(points.end(), slot.begin(), slot.end());
    return points;
}

SpacingStats line_spacing_stats(const std::vector<TransitionLine>& lines, Wavenumber center,
                                double core_halfwidth_cm1, double floor_frac) {
    SpacingStats st;
    st.strong_floor_frac = floor_frac;
    st.core_halfwidth_cm1 = core_halfwidth_cm1;
    if (lines.empty()) return st;

    // Collapse M components (and coincidences) into distinct positions with
    // the strongest coupling at each.
    std::vector<std::pair<double, double>> pos;  // (frequency, max g)
    std::vector<std::pair<double, double>> fg;
    fg.reserve(lines.size());
    for (const auto& line : lines) fg.emplace_back(line.frequency.cm1, line.g.cm1);
    std::sort(fg.begin(), fg.end());
    constexpr double tol = 1e-9;
    for (const auto& [f, g] : fg) {
        if (!pos.empty() && f - pos.back().first <= tol)
            pos.back().second = std::max(pos.back().second, g);
        else
            pos.emplace_back(f, g);
    }

    st.n_positions = static_cast<int>(pos.size());
    double min_all = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < pos.size(); ++i)
        min_all = std::min(min_all, pos[i].first - pos[i - 1].first);
    st.min_all_cm1 = pos.size() > 1 ? min_all : 0.0;

    std::vector<double> strong;
    double ref = 0.0;
    for (const auto& [f, g] : pos)
        if (std::fabs(f - center.cm1) <= core_halfwidth_cm1) ref = std::max(ref, g);
    for (const auto& [f, g] : pos)
        if (std::fabs(f - center.cm1) <= core_halfwidth_cm1 && g >= floor_frac * ref && ref > 0.0)
            strong.push_back(f);
    st.n_strong = static_cast<int>(strong.size());
    double min_strong = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < strong.size(); ++i)
        min_strong = std::min(min_strong, strong[i] - strong[i - 1]);
    st.min_strong_cm1 = strong.size() > 1 ? min_strong : 0.0;
    return st;
}

}  // namespace rovodef
