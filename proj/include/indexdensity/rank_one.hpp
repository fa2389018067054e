#pragma once

// Closed forms for <a> and <-1, a>, independent of the general engine.

#include <vector>

#include "indexdensity/density.hpp"

namespace indexdensity {

/// a = sign * a0^h with a0 > 0 not a perfect power; a0 = a1 * a2^2, a1 squarefree.
struct RankOneDecomposition {
    Rational a;
    unsigned h = 1;
    Rational a0;
    BigInt a1;
    Rational a2;
    int sign = 1;
    BigInt d;  // disc Q(sqrt(b)) with b = a0 for a > 0 and b = -a0 for a < 0, h odd
    unsigned v2h = 0;
    std::vector<BigInt> a1_primes;
};

/// Throws DegenerateInput for a in {0, 1, -1}.
RankOneDecomposition decompose(const Rational& a);

/// rho(<a>, 1).
DensityValue hooley_density(const RankOneDecomposition& dec, const Real& precision = default_precision());

/// rho(<a>, m) for odd m; ParityViolation otherwise.
DensityValue moree_odd_density(const RankOneDecomposition& dec, u64 m, const Real& precision = default_precision());

/// rho(<-1, a>, m) for a > 0; NegativeBase for a < 0.
DensityValue minus_one_a_density(const RankOneDecomposition& dec, u64 m, const Real& precision = default_precision());

/// Same group with a replaced by |a| first, since <-1, a> = <-1, -a>.
DensityValue minus_one_a_density(const Rational& a, u64 m, const Real& precision = default_precision());

/// The sign-sensitive weight epsilon_{m,a} in {0, 1}.
int epsilon_minus_one_a(const RankOneDecomposition& dec, u64 m);

/// The three-valued weight tau_{a,m} in {0, -1/3, 1}, from its case table.
Rational tau_minus_one_a(const RankOneDecomposition& dec, u64 m);

/// 1 + tau * prod_{ell | a1, ell odd, ell not dividing m} -(ell,h) / (ell^2 - ell - (ell,h)).
Rational minus_one_a_bracket(const RankOneDecomposition& dec, u64 m);

}  // namespace indexdensity
