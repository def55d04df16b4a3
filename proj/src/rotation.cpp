#include "rovodef/rotation.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include "rovodef/errors.hpp"

namespace rovodef {

namespace {

struct GaussLegendre {
    std::vector<double> x, w;
};

// Nodes and weights on [-1, 1]: Newton iteration on P_n from the standard
// Chebyshev initial guess.
GaussLegendre gauss_legendre(int n) {
    GaussLegendre g;
    g.x.resize(static_cast<std::size_t>(n));
    g.w.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::fabs(dx) < 1e-15) break;
        }
        g.x[static_cast<std::size_t>(i)] = x;
        g.w[static_cast<std::size_t>(i)] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return g;
}

// Wigner d^j_{mn}(beta) at x = cos(beta), by upward recurrence in j from the
// closed-form seed at j = max(|m|, |n|).
double wigner_d(int j, int m, int n, double x) {
    if (j < 0) return 0.0;
    if (j < std::abs(m) || j < std::abs(n)) return 0.0;

    double sign = 1.0;
    if (std::abs(n) > std::abs(m)) {
        std::swap(m, n);
        if ((m - n) % 2 != 0) sign = -sign;  // d_mn = (-1)^{m-n} d_nm
    }
    if (m < 0) {
        m = -m;
        n = -n;
        if ((m - n) % 2 != 0) sign = -sign;  // d_mn = (-1)^{m-n} d_{-m,-n}
    }

    const double c2 = std::sqrt(0.5 * (1.0 + x));  // cos(beta/2)
    const double s2 = std::sqrt(0.5 * (1.0 - x));  // sin(beta/2)
    const int l0 = m;

    double dl = 0.0, dlm1 = 0.0;
    int l = l0;
    if (l0 == 0) {
        if (j == 0) return sign;
        dlm1 = 1.0;  // d^0_00
        dl = x;      // d^1_00
        l = 1;
    } else {
        // d^{l0}_{l0, n} = sqrt((2 l0)! / ((l0+n)! (l0-n)!)) c2^{l0+n} (-s2)^{l0-n}
        const double logbin = 0.5 * (std::lgamma(2.0 * l0 + 1.0) - std::lgamma(l0 + n + 1.0) -
                                     std::lgamma(l0 - n + 1.0));
        auto pw = [](double b, int e) { return e == 0 ? 0.0 : e * std::log(b); };
        const double lg = logbin + pw(c2, l0 + n) + pw(s2, l0 - n);
        dl = std::exp(lg);
        if ((l0 - n) % 2 != 0) dl = -dl;
        if (!(lg > -745.0)) dl = 0.0;
    }

    const double md = static_cast<double>(m), nd = static_cast<double>(n);
    while (l < j) {
        const double ld = static_cast<double>(l), lp = ld + 1.0;
        const double num = (2.0 * ld + 1.0) * (ld * lp * x - md * nd) * dl -
                           lp * std::sqrt(ld * ld - md * md) * std::sqrt(ld * ld - nd * nd) * dlm1;
        const double den = ld * std::sqrt(lp * lp - md * md) * std::sqrt(lp * lp - nd * nd);
        dlm1 = dl;
        dl = num / den;
        ++l;
    }
    return sign * dl;
}

void check_state(int J, int M, int Omega, const char* which) {
    if (J < 0 || J < std::abs(Omega) || std::abs(M) > J)
        throw physics_error(std::string("orientation factor: invalid ") + which + " state (J=" +
                            std::to_string(J) + ", M=" + std::to_string(M) + ", Omega=" +
                            std::to_string(Omega) + ")");
}

}  // namespace

double honl_london(int J, int J_prime) {
    if (J < 0) throw physics_error("Honl-London factor: J must be >= 0");
    if (J_prime == J + 1) return J + 1.0;  // R branch
    if (J_prime == J - 1 && J >= 1) return static_cast<double>(J);  // P branch
    throw physics_error("Honl-London factor: only R (J'=J+1) and P (J'=J-1) branches exist "
                        "for a Sigma-Sigma band");
}

double l_factor(int J, int M, int Omega, int J_prime, int M_prime, int Omega_prime) {
    check_state(J, M, Omega, "lower");
    if (J_prime < 0 || J_prime < std::abs(Omega_prime)) return 0.0;
    if (M_prime != M) return 0.0;        // linear polarization conserves M
    if (std::abs(M_prime) > J_prime) return 0.0;  // no such target state

    if (Omega == 0 && Omega_prime == 0) {
        const double Jd = J, Md = M;
        if (J_prime == J + 1)
            return std::sqrt(((Jd + 1.0) * (Jd + 1.0) - Md * Md) /
                             ((2.0 * Jd + 1.0) * (2.0 * Jd + 3.0)));
        if (J_prime == J - 1)
            return std::sqrt((Jd * Jd - Md * Md) / ((2.0 * Jd - 1.0) * (2.0 * Jd + 1.0)));
        return 0.0;  // cos(theta) links J' = J +- 1 only (J'=J vanishes by parity)
    }
    return l_factor_quadrature(J, M, Omega, J_prime, M_prime, Omega_prime);
}

double l_factor_quadrature(int J, int M, int Omega, int J_prime, int M_prime, int Omega_prime,
                           int n_cos_nodes, int n_phi) {
    check_state(J, M, Omega, "lower");
    if (J_prime < 0 || J_prime < std::abs(Omega_prime) || std::abs(M_prime) > J_prime)
        return 0.0;
    const int d_omega = Omega_prime - Omega;
    if (std::abs(d_omega) > 1)
        throw physics_error("orientation factor: |Delta Omega| must be <= 1");
    if (n_cos_nodes < 2 || n_phi < 2)
        throw physics_error("orientation factor quadrature: too few nodes");
    if (std::abs(M - M_prime) >= n_phi)
        throw physics_error("orientation factor quadrature: phi sampling aliases Delta M");

    const GaussLegendre gl = gauss_legendre(n_cos_nodes);
    double theta_sum = 0.0;
    for (int i = 0; i < n_cos_nodes; ++i) {
        const double x = gl.x[static_cast<std::size_t>(i)];
        const double op = d_omega == 0 ? x : std::sqrt(1.0 - x * x);
        theta_sum += gl.w[static_cast<std::size_t>(i)] * op *
                     wigner_d(J_prime, M_prime, Omega_prime, x) * wigner_d(J, M, Omega, x);
    }

    const double dphi = 2.0 * std::numbers::pi / n_phi;
    std::complex<double> phi_sum = 0.0;
    for (int k_idx = 0; k_idx < n_phi; ++k_idx) {
        const double phi = dphi * k_idx;
        phi_sum += std::exp(std::complex<double>(0.0, (M - M_prime) * phi)) * dphi;
    }

    const double norm = std::sqrt((2.0 * J + 1.0) / (4.0 * std::numbers::pi)) *
                        std::sqrt((2.0 * J_prime + 1.0) / (4.0 * std::numbers::pi));
    return std::abs(norm * theta_sum * phi_sum);
}

double sum_rule_check(int J, int Omega) {
    if (J < 0 || J < std::abs(Omega))
        throw physics_error("sum rule: J must be >= |Omega| >= 0");
    double acc = 0.0;
    for (int M = -J; M <= J; ++M) {
        for (int J_prime : {J - 1, J, J + 1}) {
            if (J_prime < std::abs(Omega) || std::abs(M) > J_prime) continue;
            const double L = l_factor(J, M, Omega, J_prime, M, Omega);
            acc += L * L;
        }
    }
    return acc / (2.0 * J + 1.0);
}

}  // namespace rovodef
