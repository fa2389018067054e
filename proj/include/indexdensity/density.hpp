#pragma once

// rho(Gamma, m): the density of primes p with [F_p^* : Gamma_p] = m, as
// A(Gamma, m) * (B_m - c * B_2m), plus the independent series it sums.

#include "indexdensity/numeric.hpp"
#include "indexdensity/rational_lattice.hpp"

namespace indexdensity {

/// value = rational * kappa_r up to error_bound. exact_zero is decided on the
/// rational part alone.
struct DensityValue {
    Real value;
    Real error_bound;
    bool exact_zero = false;
    Rational rational;
    unsigned rank = 0;
};

inline const Real& default_precision() {
    static const Real p("1e-12");
    return p;
}

/// The finite rational R with A(Gamma, m) = R * kappa_r.
Rational a_factor_rational(const ExponentLattice& L, u64 m);
DensityValue a_factor(const ExponentLattice& L, u64 m, const Real& precision = default_precision());

/// B_{Gamma,k}; exact.
Rational b_factor(const ExponentLattice& L, u64 k);

/// B_m - |Gamma(m_2)| / ((2,m) |Gamma(2 m_2)|) B_2m.
Rational rho_bracket(const ExponentLattice& L, u64 m);

DensityValue rho(const ExponentLattice& L, u64 m, const Real& precision = default_precision());

/// The odd-m specialization, summing over Gamma(2) directly. ParityViolation for even m.
DensityValue rho_odd_formula(const ExponentLattice& L, u64 m, const Real& precision = default_precision());

struct SeriesEstimate {
    Real value;
    Real tail_bound;
    std::size_t terms = 0;
};

/// sum over squarefree k <= K of mu(k) / [Q(zeta_mk, Gamma^(1/mk)) : Q]. Requires K >= 16.
SeriesEstimate rho_series_oracle(const ExponentLattice& L, u64 m, u64 K);

struct LemmaCheck {
    Real lhs_partial;
    Real rhs;
    Real bound;
};

/// Odd-k Moebius sum restricted to delta | kn against its closed product.
/// ParityViolation unless n and delta are odd; InvalidArgument unless delta squarefree.
LemmaCheck lemma_tecn_check(const ExponentLattice& L, u64 n, u64 delta, u64 K);

}  // namespace indexdensity
