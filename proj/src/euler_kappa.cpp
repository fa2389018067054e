#include "indexdensity/euler_kappa.hpp"

#include <map>
#include <mutex>
#include <shared_mutex>
#include <vector>

#include <boost/math/special_functions/zeta.hpp>

#include "indexdensity/arith.hpp"
#include "indexdensity/error.hpp"

namespace indexdensity {

namespace {

// Primes below kSplit are multiplied in directly; the rest go through the
// prime zeta series. kRoughLimit bounds the explicit prime sum used for
// large arguments where a closed-form zeta loses absolute accuracy.
constexpr unsigned kSplit = 1000;
constexpr unsigned kRoughLimit = 20000;
constexpr unsigned kZetaDirectMax = 16;

const Real& internal_goal() {
    static const Real goal("1e-72");
    return goal;
}

struct ZetaTail {
    std::vector<std::uint32_t> small, large;  // primes < kSplit, kSplit <= p <= kRoughLimit

    ZetaTail() {
        for (auto p : primes_up_to(kRoughLimit)) (p < kSplit ? small : large).push_back(p);
    }

    // log zeta_L(s) = -sum_{p >= L} log(1 - p^-s), with an error bound added to err.
    Real log_zeta_rough(unsigned s, Real& err) const {
        if (s <= kZetaDirectMax) {
            Real v = log(boost::math::zeta(Real(s)));
            for (auto p : small) v += log1p(-pow(Real(p), -static_cast<int>(s)));
            err += Real("1e-95");
            return v;
        }
        Real v = 0;
        for (auto p : large) v -= log1p(-pow(Real(p), -static_cast<int>(s)));
        const Real N(kRoughLimit);
        err += 2 * pow(N, 1 - static_cast<int>(s)) / (s - 1) + Real("1e-98");
        return v;
    }
};

// Bound on sum_{k >= L} k^-s for s >= 2: L^-s (1 + L/(s-1)).
Real rough_bound(unsigned s) {
    const Real L(kSplit);
    return pow(L, -static_cast<int>(s)) * (1 + L / (s - 1));
}

// Coefficients c_n of -log(1 - x^(r+1)/(1-x)) for n <= N.
std::vector<Real> log_coefficients(unsigned r, unsigned N) {
    std::vector<Real> u(N + 1, Real(0)), power(N + 1, Real(0)), c(N + 1, Real(0));
    for (unsigned n = r + 1; n <= N; ++n) u[n] = 1;
    power = u;
    for (unsigned k = 1; k * (r + 1) <= N; ++k) {
        for (unsigned n = 0; n <= N; ++n) c[n] += power[n] / k;
        std::vector<Real> next(N + 1, Real(0));
        for (unsigned i = 0; i <= N; ++i) {
            if (power[i] == 0) continue;
            for (unsigned j = r + 1; i + j <= N; ++j) next[i + j] += power[i];
        }
        power = std::move(next);
    }
    return c;
}

EulerConstantTable compute(unsigned r) {
    static const ZetaTail tail;
    const Real L(kSplit);
    const Real& goal = internal_goal();

    Real log_kappa = 0;
    for (auto p : tail.small) {
        if (p == 2) continue;
        log_kappa += log1p(-1 / ((Real(p) - 1) * pow(Real(p), static_cast<int>(r))));
    }

    // c_n <= 2^n, so the dropped part of the series is below
    // sum_{n>N} 2^n L^-n (1 + L/N) = (2/L)^(N+1) (1 + L/N) / (1 - 2/L).
    unsigned N = r + 1;
    auto series_tail = [&](unsigned n) { return pow(2 / L, n + 1) * (1 + L / n) / (1 - 2 / L); };
    while (series_tail(N) > goal / 4) ++N;
    Real err = series_tail(N);

    const auto c = log_coefficients(r, N);
    for (unsigned n = r + 1; n <= N; ++n) {
        if (c[n] == 0) continue;
        // prime zeta over p >= L by Moebius inversion of log zeta_L
        Real P = 0, perr = 0;
        unsigned j = 1;
        for (;; ++j) {
            const int mu = mobius(j);
            if (mu != 0) P += Real(mu) / j * tail.log_zeta_rough(j * n, perr);
            // |log zeta_L(s)| <= rough_bound(s), geometric in j
            if (rough_bound((j + 1) * n) * 2 < goal / (4 * N * pow(Real(2), static_cast<int>(n)))) break;
        }
        perr += rough_bound((j + 1) * n) * 2;
        log_kappa -= c[n] * P;
        err += c[n] * perr;
    }

    EulerConstantTable t;
    t.rank = r;
    t.kappa_odd = exp(log_kappa);
    // |exp(a) - exp(b)| <= exp(max) |a - b| and kappa < 1
    t.precision = err * 1.01 + Real("1e-95");
    return t;
}

std::shared_mutex cache_mutex;
std::map<unsigned, EulerConstantTable> cache;

}  // namespace

EulerConstantTable euler_kappa(unsigned r, const Real& target) {
    if (r == 0) throw Error(ErrorCode::InvalidArgument, "rank must be positive");
    if (!(target > 0) || target < ldexp(Real(1), -200)) {
        throw Error(ErrorCode::PrecisionUnreachable, "target precision below 2^-200");
    }
    {
        std::shared_lock lock(cache_mutex);
        if (auto it = cache.find(r); it != cache.end()) return it->second;
    }
    std::unique_lock lock(cache_mutex);
    if (auto it = cache.find(r); it != cache.end()) return it->second;
    auto t = compute(r);
    if (t.precision > target) throw Error(ErrorCode::PrecisionUnreachable, "series bound above target");
    return cache.emplace(r, std::move(t)).first->second;
}

Real artin_constant() { return euler_kappa(1).kappa_odd / 2; }

}  // namespace indexdensity
