#include "indexdensity/rational_lattice.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

#include "indexdensity/error.hpp"

namespace indexdensity {

namespace {

using boost::multiprecision::denominator;
using boost::multiprecision::numerator;

bool all_digits(std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

Rational parse_rational(std::string_view token) {
    bool negative = false;
    if (!token.empty() && token.front() == '-') {
        negative = true;
        token.remove_prefix(1);
    }
    std::string_view num_text = token, den_text = "1";
    if (const auto slash = token.find('/'); slash != std::string_view::npos) {
        num_text = token.substr(0, slash);
        den_text = token.substr(slash + 1);
    }
    if (!all_digits(num_text) || !all_digits(den_text)) {
        throw Error(ErrorCode::ParseError, "malformed rational '" + std::string(token) + "'");
    }
    BigInt num{std::string(num_text)}, den{std::string(den_text)};
    if (den == 0) throw Error(ErrorCode::ParseError, "zero denominator");
    if (num == 0) throw Error(ErrorCode::ZeroGenerator, "generator 0 is not in Q*");
    if (negative) num = -num;
    return Rational(num, den);
}

constexpr unsigned kMaxGeneratorBits = 127;

}  // namespace

GroupSpec GroupSpec::parse(std::string_view text) {
    std::string compact;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) compact.push_back(c);
    if (compact.empty()) throw Error(ErrorCode::ParseError, "empty generator list");

    GroupSpec spec;
    std::size_t start = 0;
    while (true) {
        const auto comma = compact.find(',', start);
        const auto token = std::string_view(compact).substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        spec.generators.push_back(parse_rational(token));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return spec;
}

std::string GroupSpec::to_string() const {
    std::ostringstream out;
    for (std::size_t i = 0; i < generators.size(); ++i) {
        if (i) out << ',';
        out << numerator(generators[i]);
        if (denominator(generators[i]) != 1) out << '/' << denominator(generators[i]);
    }
    return out.str();
}

CosetElement::CosetElement(u64 modulus_, bool negative_, std::vector<u64> exps_)
    : modulus(modulus_), negative(negative_ && modulus_ % 2 == 0), exps(std::move(exps_)) {
    for (auto& e : exps) e %= modulus;
}

bool CosetElement::is_identity() const {
    return !negative && std::all_of(exps.begin(), exps.end(), [](u64 e) { return e == 0; });
}

CosetElement operator*(const CosetElement& a, const CosetElement& b) {
    if (a.modulus != b.modulus || a.exps.size() != b.exps.size()) {
        throw Error(ErrorCode::ModulusMismatch, "cosets of different groups");
    }
    std::vector<u64> exps(a.exps.size());
    for (std::size_t j = 0; j < exps.size(); ++j) {
        exps[j] = static_cast<u64>((static_cast<u128>(a.exps[j]) + b.exps[j]) % a.modulus);
    }
    return CosetElement(a.modulus, a.negative != b.negative, std::move(exps));
}

BigInt PowerFreeRep::gamma_prime() const {
    const auto bits = boost::multiprecision::msb(gamma0) + 1;
    if (static_cast<u128>(bits) * power > 4096) {
        throw Error(ErrorCode::ResourceLimit, "gamma' too large to materialize");
    }
    BigInt g = boost::multiprecision::pow(gamma0, static_cast<unsigned>(power));
    return positive ? g : BigInt(-g);
}

ExponentLattice ExponentLattice::build(const GroupSpec& spec) {
    ExponentLattice L;
    L.spec_ = spec;

    std::vector<std::map<BigInt, long long>> valuations;
    std::map<BigInt, bool> primes;
    for (const auto& g : spec.generators) {
        if (g == 0) throw Error(ErrorCode::ZeroGenerator, "generator 0 is not in Q*");
        if (g == 1) continue;
        const BigInt num = numerator(g), den = denominator(g);
        if (boost::multiprecision::msb(abs(num)) >= kMaxGeneratorBits ||
            boost::multiprecision::msb(den) >= kMaxGeneratorBits) {
            throw Error(ErrorCode::FactorizationOverflow, "generator exceeds 128-bit signed range");
        }
        std::map<BigInt, long long> v;
        if (abs(num) != 1)
            for (const auto& [p, e] : factor(num)) v[p] += e;
        if (den != 1)
            for (const auto& [p, e] : factor(den)) v[p] -= e;
        for (const auto& [p, e] : v) primes[p] = true;
        valuations.push_back(std::move(v));
        L.sign_col_.push_back(num < 0 ? 1 : 0);
    }
    for (const auto& [p, _] : primes) L.support_.push_back(p);

    const std::size_t k = L.support_.size();
    for (const auto& v : valuations) {
        std::vector<BigInt> row(k, 0);
        for (std::size_t j = 0; j < k; ++j) {
            if (auto it = v.find(L.support_[j]); it != v.end()) row[j] = it->second;
        }
        L.exp_matrix_.push_back(std::move(row));
    }
    L.snf_ = smith_normal_form(L.exp_matrix_, k);

    BigInt product = 1;
    for (const auto& d : L.snf_.diagonal) product *= d;
    if (product > 1)
        for (const auto& [p, e] : factor(product))
            if (p != 2) L.bad_primes_.push_back(p);

    // Gamma(2^alpha) sits in Z/2 x (Z/2^alpha)^k; embed the sign as
    // 2^(alpha-1) * s so the whole image is a row lattice mod 2^alpha.
    L.two_adic_.resize(kMaxTwoAdicLevel + 1);
    const std::size_t g = L.exp_matrix_.size();
    for (unsigned alpha = 1; alpha <= kMaxTwoAdicLevel; ++alpha) {
        const u64 n = u64{1} << alpha;
        IntMatrix A(g, std::vector<BigInt>(k + 1, 0));
        for (std::size_t i = 0; i < g; ++i) {
            A[i][0] = BigInt(n / 2) * L.sign_col_[i];
            for (std::size_t j = 0; j < k; ++j) A[i][j + 1] = L.exp_matrix_[i][j];
        }
        const SmithForm S = smith_normal_form(A, k + 1);
        TwoAdicLevel level;
        const BigInt nn(n);
        for (std::size_t i = 0; i < S.rank(); ++i) {
            const BigInt& d = S.diagonal[i];
            level.order *= nn / boost::multiprecision::gcd(nn, d);
            if (valuation(d, 2) >= alpha) continue;
            // (n/2) * (row i of V^-1) generates the 2-torsion of this cyclic factor
            TorsionBits bits;
            bits.negative = (S.V_inv[i][0] % 2) != 0;
            bits.mask.resize(k);
            for (std::size_t j = 0; j < k; ++j) bits.mask[j] = (S.V_inv[i][j + 1] % 2) != 0;
            level.basis.push_back(std::move(bits));
        }
        L.two_adic_[alpha] = std::move(level);
    }
    return L;
}

bool ExponentLattice::has_negative_generator() const {
    return std::any_of(sign_col_.begin(), sign_col_.end(), [](std::uint8_t s) { return s != 0; });
}

std::size_t ExponentLattice::rank_mod(const BigInt& ell) const {
    std::size_t r = 0;
    for (const auto& d : snf_.diagonal)
        if (d % ell != 0) ++r;
    return r;
}

BigInt ExponentLattice::gamma_ell(const BigInt& ell) const {
    if (ell == 2) return two_adic_order(1);
    return boost::multiprecision::pow(ell, static_cast<unsigned>(rank_mod(ell)));
}

const BigInt& ExponentLattice::two_adic_order(unsigned alpha) const {
    if (alpha > kMaxTwoAdicLevel) throw Error(ErrorCode::InvalidArgument, "2-adic level out of range");
    return two_adic_[alpha].order;
}

BigInt ExponentLattice::gamma_m_order(u64 m) const {
    if (m == 0) throw Error(ErrorCode::InvalidArgument, "m must be positive");
    BigInt order = two_adic_order(valuation(m, 2));
    for (const auto& [ell, e] : factor_u64(odd_part(m))) {
        const BigInt q(ipow(ell, e));
        for (const auto& d : snf_.diagonal) order *= q / boost::multiprecision::gcd(q, d);
    }
    return order;
}

std::vector<TorsionEntry> ExponentLattice::two_torsion_entries(unsigned alpha) const {
    std::vector<CosetElement> elems = two_torsion(alpha);
    std::vector<TorsionEntry> out;
    out.reserve(elems.size());
    for (auto& e : elems) {
        PowerFreeRep rep = power_free_rep(e);
        out.push_back({std::move(e), std::move(rep)});
    }
    return out;
}

std::vector<CosetElement> ExponentLattice::two_torsion(unsigned alpha) const {
    const std::size_t k = support_.size();
    if (alpha == 0) return {CosetElement(1, false, std::vector<u64>(k, 0))};
    if (alpha > kMaxTwoAdicLevel) throw Error(ErrorCode::InvalidArgument, "2-adic level out of range");

    const u64 n = u64{1} << alpha;
    const auto& basis = two_adic_[alpha].basis;
    if (basis.size() > 24) throw Error(ErrorCode::ResourceLimit, "two-torsion too large to enumerate");

    std::vector<CosetElement> out;
    out.reserve(std::size_t{1} << basis.size());
    for (std::size_t subset = 0; subset < (std::size_t{1} << basis.size()); ++subset) {
        bool negative = false;
        std::vector<std::uint8_t> mask(k, 0);
        for (std::size_t b = 0; b < basis.size(); ++b) {
            if (!((subset >> b) & 1)) continue;
            negative ^= basis[b].negative;
            for (std::size_t j = 0; j < k; ++j) mask[j] ^= basis[b].mask[j];
        }
        std::vector<u64> exps(k, 0);
        for (std::size_t j = 0; j < k; ++j) exps[j] = mask[j] ? n / 2 : 0;
        out.emplace_back(n, negative, std::move(exps));
    }
    std::sort(out.begin(), out.end());
    return out;
}

PowerFreeRep ExponentLattice::power_free_rep(const CosetElement& gamma) const {
    if (gamma.exps.size() != support_.size()) {
        throw Error(ErrorCode::ModulusMismatch, "coset does not belong to this lattice");
    }
    PowerFreeRep rep;
    const u64 n = gamma.modulus;
    if (n % 2 == 1) {
        for (std::size_t j = 0; j < support_.size(); ++j) {
            if (gamma.exps[j] % 2 == 0) continue;
            rep.gamma0 *= support_[j];
            rep.core_primes.push_back(support_[j]);
        }
        rep.delta = quadratic_discriminant(rep.gamma0);
        return rep;
    }
    if ((n & (n - 1)) != 0) {
        throw Error(ErrorCode::NotTwoTorsion, "even modulus must be a power of two");
    }
    const u64 half = n / 2;
    for (std::size_t j = 0; j < support_.size(); ++j) {
        if (gamma.exps[j] == 0) continue;
        if (gamma.exps[j] != half) throw Error(ErrorCode::NotTwoTorsion, "coset has order > 2");
        rep.gamma0 *= support_[j];
        rep.core_primes.push_back(support_[j]);
    }
    rep.positive = !gamma.negative;
    rep.power = half;
    rep.delta = quadratic_discriminant(rep.gamma0);
    return rep;
}

CosetElement ExponentLattice::generator_coset(std::size_t i, u64 m) const {
    std::vector<u64> exps(support_.size());
    const BigInt mm(m);
    for (std::size_t j = 0; j < exps.size(); ++j) {
        BigInt e = exp_matrix_.at(i)[j] % mm;
        if (e < 0) e += mm;
        exps[j] = static_cast<u64>(e);
    }
    return CosetElement(m, sign_col_.at(i) != 0, std::move(exps));
}

}  // namespace indexdensity
