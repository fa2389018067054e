#pragma once

// A finitely generated subgroup of Q* viewed as a sublattice of
// {+-1} x Z^k, k = number of support primes.

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "indexdensity/arith.hpp"
#include "indexdensity/numeric.hpp"
#include "indexdensity/smith.hpp"

namespace indexdensity {

/// Nonzero rational generators as typed by the user; 1 is allowed and ignored.
struct GroupSpec {
    std::vector<Rational> generators;

    /// Grammar: comma-separated `[-]digits[/digits]`, whitespace ignored.
    static GroupSpec parse(std::string_view text);

    /// Canonical comma-separated rendering of the reduced generators.
    std::string to_string() const;
};

/// An element of Gamma(m) = Gamma Q*^m / Q*^m: a sign bit (used only for even m)
/// and the exponent vector mod m over the support primes.
struct CosetElement {
    u64 modulus = 1;
    bool negative = false;
    std::vector<u64> exps;

    CosetElement() = default;
    CosetElement(u64 modulus, bool negative, std::vector<u64> exps);

    bool is_identity() const;
    friend CosetElement operator*(const CosetElement& a, const CosetElement& b);
    friend bool operator==(const CosetElement& a, const CosetElement& b) = default;
    friend auto operator<=>(const CosetElement& a, const CosetElement& b) = default;
};

/// gamma' = (+-1) * gamma0^power, gamma0 squarefree, delta = disc Q(sqrt gamma0).
struct PowerFreeRep {
    BigInt gamma0 = 1;
    BigInt delta = 1;
    bool positive = true;
    u64 power = 1;                   // 2^(alpha-1), or 1 for odd moduli
    std::vector<BigInt> core_primes;  // prime factors of gamma0, ascending

    /// Materializes gamma'; throws ResourceLimit if it would exceed 4096 bits.
    BigInt gamma_prime() const;
};

/// A two-torsion element together with its power-free data.
struct TorsionEntry {
    CosetElement coset;
    PowerFreeRep rep;
};

class ExponentLattice {
public:
    /// Largest alpha for which Gamma(2^alpha) data is kept (2^alpha must fit in u64).
    static constexpr unsigned kMaxTwoAdicLevel = 63;

    /// Factors every generator; throws ZeroGenerator or FactorizationOverflow.
    static ExponentLattice build(const GroupSpec& spec);

    const GroupSpec& spec() const { return spec_; }
    const std::vector<BigInt>& support() const { return support_; }
    const std::vector<std::uint8_t>& sign_column() const { return sign_col_; }
    const IntMatrix& exponent_matrix() const { return exp_matrix_; }
    const SmithForm& smith() const { return snf_; }
    std::size_t rank() const { return snf_.rank(); }
    const std::vector<BigInt>& bad_primes() const { return bad_primes_; }
    bool has_negative_generator() const;

    /// |Gamma(m)|, multiplicative over the prime-power parts of m.
    BigInt gamma_m_order(u64 m) const;

    /// |Gamma(ell)| = ell^(rank of the exponent matrix mod ell), ell an odd prime.
    BigInt gamma_ell(const BigInt& ell) const;
    std::size_t rank_mod(const BigInt& ell) const;

    /// |Gamma(2^alpha)| for 0 <= alpha <= kMaxTwoAdicLevel.
    const BigInt& two_adic_order(unsigned alpha) const;

    /// All gamma in Gamma(2^alpha) with gamma^2 = 1, identity first.
    std::vector<CosetElement> two_torsion(unsigned alpha) const;
    std::vector<TorsionEntry> two_torsion_entries(unsigned alpha) const;

    /// Throws NotTwoTorsion when gamma is not of order <= 2 in Gamma(2^alpha)
    /// (odd moduli are accepted and reduced to their squarefree core).
    PowerFreeRep power_free_rep(const CosetElement& gamma) const;

    /// Image of generator i in Gamma(m).
    CosetElement generator_coset(std::size_t i, u64 m) const;

private:
    // Two-torsion of Gamma(2^alpha) is an F2-space; each basis vector is a
    // sign bit plus a mask over the support (coordinate = 2^(alpha-1) or 0).
    struct TorsionBits {
        bool negative = false;
        std::vector<std::uint8_t> mask;
    };
    struct TwoAdicLevel {
        BigInt order = 1;
        std::vector<TorsionBits> basis;
    };

    GroupSpec spec_;
    std::vector<BigInt> support_;
    std::vector<std::uint8_t> sign_col_;
    IntMatrix exp_matrix_;
    SmithForm snf_;
    std::vector<BigInt> bad_primes_;
    std::vector<TwoAdicLevel> two_adic_;
};

}  // namespace indexdensity
