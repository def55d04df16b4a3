#include "support/numerov.hpp"

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "rovodef/units.hpp"

namespace rovodef::testing {

namespace {

constexpr double rescale_limit = 1e250;

// Morse potential in joules, zero at the well bottom.
double potential_J(const MorseWell& w, double r_m) {
    const double e = 1.0 - std::exp(-w.a_inv_m * (r_m - w.r_e_m));
    return w.D_e.joule() * e * e;
}

struct Shooter {
    std::vector<double> V;  // potential on the grid, J
    double dr = 0.0;
    double mu = 0.0;
    double cap = 0.0;  // largest V - E admitted into the integration

    Shooter(const MorseWell& w, const RadialGrid& g) {
        V.resize(static_cast<std::size_t>(g.n));
        for (int i = 0; i < g.n; ++i) V[static_cast<std::size_t>(i)] = potential_J(w, g.r(i));
        dr = g.dr_m;
        mu = w.reduced_mass_kg;
        // Beyond this the local wavelength is unresolved and Numerov produces
        // spurious oscillations on the steep inner wall.
        cap = 3.0 * constants::hbar * constants::hbar / (mu * dr * dr);
    }

    int start_index(double E) const {
        for (std::size_t i = 0; i < V.size(); ++i)
            if (V[i] - E < cap) return static_cast<int>(i);
        throw std::runtime_error("numerov: no classically accessible grid point");
    }

    double numerov_factor(double E, int i) const {
        const double k2 =
            2.0 * mu * (E - V[static_cast<std::size_t>(i)]) / (constants::hbar * constants::hbar);
        return 1.0 + dr * dr * k2 / 12.0;
    }

    // Left-shoot over the whole grid; returns the node count. Only signs are
    // needed, so rescaling touches just the running pair.
    int count_nodes(double E) const {
        const int n = static_cast<int>(V.size());
        const int i0 = start_index(E);
        if (i0 > n - 3) throw std::runtime_error("numerov: accessible region too small");
        double um = 0.0;
        double ui = 1e-12;
        double fm = numerov_factor(E, i0);
        double fi = numerov_factor(E, i0 + 1);
        int nodes = 0;
        double prev = ui;
        for (int i = i0 + 1; i + 1 < n; ++i) {
            const double fp = numerov_factor(E, i + 1);
            double up = ((12.0 - 10.0 * fi) * ui - fm * um) / fp;
            if (std::abs(up) > rescale_limit) {
                const double s = std::abs(up);
                up /= s;
                ui /= s;
                prev = ui;
            }
            if (up != 0.0 && prev != 0.0 && (up < 0.0) != (prev < 0.0)) ++nodes;
            if (up != 0.0) prev = up;
            um = ui;
            ui = up;
            fm = fi;
            fi = fp;
        }
        return nodes;
    }

    // Forward integration from i0 to i_end inclusive; prefix-rescaled so the
    // stored shape stays consistent.
    std::vector<double> shoot_left(double E, int i0, int i_end) const {
        std::vector<double> u(V.size(), 0.0);
        u[static_cast<std::size_t>(i0)] = 0.0;
        u[static_cast<std::size_t>(i0 + 1)] = 1e-250;
        double fm = numerov_factor(E, i0);
        double fi = numerov_factor(E, i0 + 1);
        for (int i = i0 + 1; i < i_end; ++i) {
            const double fp = numerov_factor(E, i + 1);
            const double up = ((12.0 - 10.0 * fi) * u[static_cast<std::size_t>(i)] -
                               fm * u[static_cast<std::size_t>(i - 1)]) /
                              fp;
            u[static_cast<std::size_t>(i + 1)] = up;
            if (std::abs(up) > rescale_limit) {
                const double s = std::abs(up);
                for (int j = i0; j <= i + 1; ++j) u[static_cast<std::size_t>(j)] /= s;
            }
            fm = fi;
            fi = fp;
        }
        return u;
    }

    // Backward integration from the right edge down to i_end inclusive.
    std::vector<double> shoot_right(double E, int i_end) const {
        const int n = static_cast<int>(V.size());
        std::vector<double> u(V.size(), 0.0);
        u[static_cast<std::size_t>(n - 1)] = 0.0;
        u[static_cast<std::size_t>(n - 2)] = 1e-250;
        double fp = numerov_factor(E, n - 1);
        double fi = numerov_factor(E, n - 2);
        for (int i = n - 2; i > i_end; --i) {
            const double fm = numerov_factor(E, i - 1);
            const double um = ((12.0 - 10.0 * fi) * u[static_cast<std::size_t>(i)] -
                               fp * u[static_cast<std::size_t>(i + 1)]) /
                              fm;
            u[static_cast<std::size_t>(i - 1)] = um;
            if (std::abs(um) > rescale_limit) {
                const double s = std::abs(um);
                for (int j = n - 1; j >= i - 1; --j) u[static_cast<std::size_t>(j)] /= s;
            }
            fp = fi;
            fi = fm;
        }
        return u;
    }
};

}  // namespace

std::vector<double> numerov_wavefunction(const MorseWell& well, int nu, const RadialGrid& grid) {
    if (nu < 0 || nu > well.nu_max) throw std::runtime_error("numerov: nu out of range");

    Shooter sh(well, grid);

    // Bracket from analytic term values (guidance only; verified by node
    // counts below and refined purely by the ODE).
    const double E_nu = well.energy(nu).joule();
    double lo = (nu == 0) ? 0.5 * E_nu : 0.5 * (well.energy(nu - 1).joule() + E_nu);
    double hi;
    if (nu + 1 <= well.nu_max) {
        hi = 0.5 * (E_nu + well.energy(nu + 1).joule());
    } else {
        hi = std::min(well.D_e.joule(), E_nu + 0.5 * (E_nu - well.energy(nu - 1).joule()));
    }
    if (sh.count_nodes(lo) > nu) throw std::runtime_error("numerov: lower bracket has too many nodes");
    if (sh.count_nodes(hi) <= nu) throw std::runtime_error("numerov: upper bracket has too few nodes");

    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        if (sh.count_nodes(mid) > nu)
            hi = mid;
        else
            lo = mid;
    }
    const double E = 0.5 * (lo + hi);

    // Two-sided assembly matched at the outer turning point.
    const int n = grid.n;
    int it_outer = n - 2;
    while (it_outer > 0 && sh.V[static_cast<std::size_t>(it_outer)] > E) --it_outer;
    const int i0 = sh.start_index(E);
    if (it_outer <= i0 + 2 || it_outer >= n - 2)
        throw std::runtime_error("numerov: outer turning point out of range");

    const std::vector<double> uL = sh.shoot_left(E, i0, it_outer + 1);
    const std::vector<double> uR = sh.shoot_right(E, it_outer - 1);

    int im = it_outer;
    while (im > i0 + 1 && (uL[static_cast<std::size_t>(im)] == 0.0 ||
                           uR[static_cast<std::size_t>(im)] == 0.0))
        --im;
    const double scale = uL[static_cast<std::size_t>(im)] / uR[static_cast<std::size_t>(im)];

    std::vector<double> u(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i <= im; ++i) u[static_cast<std::size_t>(i)] = uL[static_cast<std::size_t>(i)];
    for (int i = im + 1; i < n; ++i)
        u[static_cast<std::size_t>(i)] = uR[static_cast<std::size_t>(i)] * scale;

    const double norm2 = overlap_integral(u, u, grid.dr_m);
    if (!(norm2 > 0.0)) throw std::runtime_error("numerov: zero norm");
    double tail = 0.0;
    for (int i = im; i < n; ++i) tail += u[static_cast<std::size_t>(i)];
    const double s = (tail < 0.0 ? -1.0 : 1.0) / std::sqrt(norm2);
    for (double& v : u) v *= s;
    return u;
}

double numerov_overlap(const MorseWell& lower, const MorseWell& upper, int nu, int nu_prime,
                       const RadialGrid& grid) {
    const std::vector<double> ul = numerov_wavefunction(lower, nu, grid);
    const std::vector<double> uu = numerov_wavefunction(upper, nu_prime, grid);
    return overlap_integral(ul, uu, grid.dr_m);
}

}  // namespace rovodef::testing
