#pragma once

// Entanglement groups between Gamma's radicals and cyclotomic fields, and the
// degrees [Q(zeta_n, Gamma^(1/d)) : Q] they control.

#include <vector>

#include "indexdensity/rational_lattice.hpp"

namespace indexdensity {

/// A subgroup of Gamma(2^alpha)[2] attached to a modulus n with 2^alpha | n.
struct TwistSubgroup {
    u64 n = 1;
    u64 d = 1;  // 2-part the elements live in (cosets have modulus d, or 1)
    std::vector<TorsionEntry> elements;  // identity first

    std::size_t size() const { return elements.size(); }
};

/// Gamma~_{n,2^alpha}: radicals already inside Q(zeta_n). Throws ModulusMismatch
/// unless 2^alpha | n.
TwistSubgroup twist_subgroup(const ExponentLattice& L, u64 n, unsigned alpha);

/// The even-n, alpha = 1 criterion {gamma in Gamma(2) : disc Q(sqrt gamma') | n},
/// kept separate from twist_subgroup so the two can be compared.
TwistSubgroup twist_subgroup_quadratic(const ExponentLattice& L, u64 n);

/// Gamma~(m) by its valuation conditions on delta.
TwistSubgroup tilde_gamma(const ExponentLattice& L, u64 m);

/// Gamma~(m) by the closed case split on v_2(m).
TwistSubgroup tilde_gamma_cases(const ExponentLattice& L, u64 m);

/// phi(n) |Gamma(d)| / |Gamma~_{n,d_2}|. Throws DivisibilityViolation unless d | n.
BigInt kummer_degree(const ExponentLattice& L, u64 n, u64 d);

}  // namespace indexdensity
