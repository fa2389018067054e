#pragma once

// Combinatorial criteria for rho(Gamma, m) = 0 and for finiteness of the set of
// primes with index exactly m; no density is evaluated here.

#include <string>
#include <vector>

#include "indexdensity/rank_one.hpp"
#include "indexdensity/rational_lattice.hpp"

namespace indexdensity {

enum class VanishCondition { None, W1, W2, L1, L2, L3, L4, L5, L6, A, B, C };
enum class Finiteness { Finite, InfiniteOnGRH, Unknown };

const char* to_string(VanishCondition c) noexcept;
const char* to_string(Finiteness f) noexcept;

struct VanishVerdict {
    bool vanishes = false;
    VanishCondition matched = VanishCondition::None;
    Finiteness finiteness = Finiteness::Unknown;
    std::vector<VanishCondition> all_matched;  // every condition that held, in list order
};

/// disc Q(sqrt(x)) for a nonzero rational x, 1 when x is a square.
BigInt rational_discriminant(const Rational& x);

/// <-1, a>, a > 0: the two-case criterion (an iff).
VanishVerdict classify_minus_one_a(const RankOneDecomposition& dec, u64 m);

/// <g>: the six-case criterion (an iff). Throws DegenerateInput for g in {0, +-1}.
VanishVerdict classify_lenstra(const Rational& g, u64 m);

/// Sufficient conditions A, B, C for general Gamma of rank >= 1.
VanishVerdict sufficient_vanishing(const ExponentLattice& L, u64 m);

/// For <g>: A <-> L1, C <-> L4, B <-> the L2/L3/L5/L6 case selected by sign and 2-adic data.
bool lenstra_consistency(const Rational& g, u64 m);

struct CensusHit {
    BigInt a;
    u64 m = 0;  // smallest m <= m_max with rho(<-1, a>, m) = 0
    VanishCondition matched = VanishCondition::None;
};

/// Runs classify_minus_one_a over each a > 0 and keeps the first vanishing m.
std::vector<CensusHit> minus_one_a_census(const std::vector<BigInt>& values, u64 m_max);

}  // namespace indexdensity
