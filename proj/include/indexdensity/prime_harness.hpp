#pragma once

// Empirical index statistics: for every prime p <= x outside Supp Gamma,
// the index [F_p^* : Gamma_p], histogrammed for 1..m_max.

#include <string>
#include <vector>

#include "indexdensity/density.hpp"
#include "indexdensity/rational_lattice.hpp"

namespace indexdensity {

struct IndexHistogram {
    std::string group;
    u64 group_fingerprint = 0;
    u64 x_lo = 0;  // primes p with x_lo <= p < x_hi
    u64 x_hi = 0;
    u64 m_max = 0;
    std::vector<u64> counts;  // counts[m - 1] = #{p : index = m}
    u64 overflow = 0;
    std::vector<u64> excluded;  // primes in range not counted (2 and Supp Gamma)
    u64 total_primes = 0;       // sum of counts plus overflow
    double wall_seconds = 0;

    u64 x() const { return x_hi == 0 ? 0 : x_hi - 1; }
    u64 count(u64 m) const { return m >= 1 && m <= counts.size() ? counts[m - 1] : 0; }
    /// pi over the scanned range, excluded primes included.
    u64 prime_count() const { return total_primes + excluded.size(); }
};

struct ScanOptions {
    u64 x_lo = 0;
    u64 x = 0;  // inclusive upper limit
    u64 m_max = 20;
    unsigned threads = 1;
    u64 segment_size = u64{1} << 22;
    u64 max_x = 10'000'000'000ULL;
};

/// 64-bit FNV-1a over the canonical group string.
u64 group_fingerprint(const GroupSpec& spec);

/// [F_p^* : Gamma_p] for an odd prime p outside the support. Throws SupportPrime.
u64 index_of(u64 p, const ExponentLattice& L);

/// Segmented scan. Throws ResourceLimit when x > max_x, InvalidArgument when x < 100.
IndexHistogram scan(const GroupSpec& spec, const ScanOptions& options);

/// Union of two scans of adjacent ranges of the same group. Throws IncompatibleHistograms.
IndexHistogram merge(const IndexHistogram& a, const IndexHistogram& b);

std::string to_json(const IndexHistogram& h, int indent = 2);
IndexHistogram histogram_from_json(const std::string& text);

struct ComparisonRow {
    u64 m = 0;
    double empirical = 0;
    double predicted = 0;
    double deviation = 0;
    double sigma = 0;
    bool flagged = false;
};

struct ComparisonReport {
    std::vector<ComparisonRow> rows;
    bool any_flagged = false;
};

/// densities[m - 1] is rho(Gamma, m); rows cover m = 1..min(m_max, densities.size()).
/// A row is flagged when |empirical - rho| > 4 sqrt(rho (1 - rho) / pi(x)).
ComparisonReport compare(const IndexHistogram& h, const std::vector<DensityValue>& densities);

}  // namespace indexdensity
