#pragma once

namespace rovodef {

// Honl-London factor for a Sigma-Sigma band: S = J+1 on the R branch
// (J' = J+1), S = J on the P branch (J' = J-1). The Q branch is forbidden.
double honl_london(int J, int J_prime);

// Orientation factor L: matrix element of cos(theta) (Delta Omega = 0) or
// sin(theta) (Delta Omega = +-1) between normalized symmetric-top states
// (J, M, Omega) and (J', M', Omega'). Linear polarization: zero unless
// M' = M. The Omega = Omega' = 0 path uses closed forms; other cases fall
// back to the quadrature below.
double l_factor(int J, int M, int Omega, int J_prime, int M_prime, int Omega_prime);

// |L| by direct 2-D quadrature (Gauss-Legendre in cos theta, trapezoid in
// phi) over symmetric-top wavefunctions built from Wigner d matrices.
// Exact for J + J' + 1 < 2 n_cos_nodes.
double l_factor_quadrature(int J, int M, int Omega, int J_prime, int M_prime,
                           int Omega_prime, int n_cos_nodes = 64, int n_phi = 256);

// sum_M sum_{J' in {J-1, J, J+1}} |L|^2 / (2J+1): the M-averaged
// <cos^2 theta> of the (J, Omega) multiplet; 1/3 by closure. The J'=J term
// vanishes for Omega = 0.
double sum_rule_check(int J, int Omega);

}  // namespace rovodef
