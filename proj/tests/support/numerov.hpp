#pragma once

#include <vector>

#include "rovodef/morse.hpp"

namespace rovodef::testing {

// Independent bound-state solver for a Morse well: Numerov integration with
// node-count bisection on the energy (the diverging tail of the left-shoot
// solution flips sign at each eigenvalue), assembled two-sided at the outer
// turning point, Simpson-normalized, tail sign positive. Analytic term values
// are used only to bracket the eigenvalue search; the bracket is verified by
// node counts at both ends.
std::vector<double> numerov_wavefunction(const MorseWell& well, int nu, const RadialGrid& grid);

double numerov_overlap(const MorseWell& lower, const MorseWell& upper, int nu, int nu_prime,
                       const RadialGrid& grid);

}  // namespace rovodef::testing
