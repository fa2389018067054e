#pragma once

// kappa_r = prod_{ell > 2} (1 - 1/((ell - 1) ell^r)), the universal Euler product
// that every A(Gamma, m) factors through.

#include "indexdensity/numeric.hpp"

namespace indexdensity {

struct EulerConstantTable {
    unsigned rank = 0;
    Real kappa_odd;
    Real precision;  // rigorous bound on |kappa_odd - kappa_r|
};

/// Throws PrecisionUnreachable when target < 2^-200 and InvalidArgument for r = 0.
/// Values are computed once per rank at full internal precision and cached.
EulerConstantTable euler_kappa(unsigned r, const Real& target = Real("1e-12"));

/// prod_ell (1 - 1/(ell(ell-1))) = kappa_1 / 2.
Real artin_constant();

}  // namespace indexdensity
