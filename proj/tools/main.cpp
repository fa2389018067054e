#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "indexdensity/density.hpp"
#include "indexdensity/error.hpp"
#include "indexdensity/euler_kappa.hpp"
#include "indexdensity/format.hpp"
#include "indexdensity/kummer.hpp"
#include "indexdensity/prime_harness.hpp"
#include "indexdensity/rank_one.hpp"
#include "indexdensity/vanishing.hpp"
#include "table.hpp"

using namespace indexdensity;

namespace {

constexpr int kExitPrecondition = 2;
constexpr int kExitResource = 3;
constexpr int kExitConsistency = 4;

struct ConsistencyFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

int exit_code_for(ErrorCode c) {
    switch (c) {
    case ErrorCode::ResourceLimit:
    case ErrorCode::PrecisionUnreachable:
    case ErrorCode::FactorizationOverflow:
        return kExitResource;
    default:
        return kExitPrecondition;
    }
}

// "7", "1..20", "1,2,5", "1..4,9"
std::vector<u64> parse_m_list(const std::string& text) {
    std::vector<u64> out;
    std::stringstream ss(text);
    for (std::string part; std::getline(ss, part, ',');) {
        try {
            std::size_t used = 0;
            if (const auto dots = part.find(".."); dots != std::string::npos) {
                const u64 lo = std::stoull(part.substr(0, dots), &used);
                const u64 hi = std::stoull(part.substr(dots + 2));
                if (lo == 0 || hi < lo || hi - lo > 1'000'000) throw Error(ErrorCode::InvalidArgument, "bad m range '" + part + "'");
                for (u64 m = lo; m <= hi; ++m) out.push_back(m);
            } else {
                const u64 m = std::stoull(part, &used);
                if (used != part.size() || m == 0) throw Error(ErrorCode::InvalidArgument, "bad m '" + part + "'");
                out.push_back(m);
            }
        } catch (const std::logic_error&) {
            throw Error(ErrorCode::InvalidArgument, "bad m '" + part + "'");
        }
    }
    if (out.empty()) throw Error(ErrorCode::InvalidArgument, "empty m list");
    return out;
}

// Accepts plain integers and exact scientific forms such as 1e8 or 2.5e7.
u64 parse_count(const std::string& text) {
    const auto e = text.find_first_of("eE");
    try {
        if (e == std::string::npos) {
            std::size_t used = 0;
            const u64 v = std::stoull(text, &used);
            if (used == text.size()) return v;
        } else {
            const std::string mant = text.substr(0, e);
            const int exp = std::stoi(text.substr(e + 1));
            const auto dot = mant.find('.');
            std::string digits = mant;
            int shift = exp;
            if (dot != std::string::npos) {
                digits = mant.substr(0, dot) + mant.substr(dot + 1);
                shift -= static_cast<int>(mant.size() - dot - 1);
            }
            if (shift >= 0 && shift <= 19 && !digits.empty() &&
                digits.find_first_not_of("0123456789") == std::string::npos) {
                BigInt v{digits};
                v *= boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(shift));
                if (v <= std::numeric_limits<u64>::max()) return static_cast<u64>(v);
            }
        }
    } catch (const std::logic_error&) {
    }
    throw Error(ErrorCode::InvalidArgument, "not a nonnegative integer: '" + text + "'");
}

cli::Format parse_format(const std::string& f) {
    if (f == "tsv") return cli::Format::Tsv;
    if (f == "json") return cli::Format::Json;
    if (f == "pretty") return cli::Format::Pretty;
    throw Error(ErrorCode::InvalidArgument, "unknown format '" + f + "'");
}

std::string sci(const Real& v, int digits = 2) {
    if (v == 0) return "0";
    return v.str(digits, std::ios::scientific);
}

std::string fixed_double(double v, int digits) {
    std::ostringstream o;
    o.precision(digits);
    o << std::fixed << v;
    return o.str();
}

struct Common {
    std::string format = "tsv";
    std::string output;
    bool round = false;
    bool truncate = false;
    unsigned digits = 7;

    DisplayMode mode() const { return round ? DisplayMode::Round : DisplayMode::Truncate; }

    void emit(const cli::Table& t) const {
        const auto f = parse_format(format);
        if (output.empty()) {
            t.write(std::cout, f);
            return;
        }
        std::ofstream out(output);
        if (!out) throw Error(ErrorCode::InvalidArgument, "cannot open '" + output + "' for writing");
        t.write(out, f);
    }
};

void add_common(CLI::App* sub, Common& c) {
    sub->add_option("--format", c.format, "tsv | json | pretty")->check(CLI::IsMember({"tsv", "json", "pretty"}));
    sub->add_option("-o,--output", c.output, "write the table to this path instead of stdout");
    auto* r = sub->add_flag("--round", c.round, "round half-even to the displayed digits");
    auto* t = sub->add_flag("--truncate", c.truncate, "truncate to the displayed digits (default)");
    r->excludes(t);
    sub->add_option("--digits", c.digits, "significant digits shown")->check(CLI::Range(1u, 40u));
}

unsigned resolve_threads(unsigned requested) {
    if (const char* env = std::getenv("INDEXDENSITY_THREADS"); env && *env) {
        try {
            const unsigned long v = std::stoul(env);
            if (v > 0 && v <= 4096) return static_cast<unsigned>(v);
        } catch (const std::logic_error&) {
        }
        throw Error(ErrorCode::InvalidArgument, "INDEXDENSITY_THREADS must be a positive integer");
    }
    if (requested) return requested;
    return std::max(1u, std::thread::hardware_concurrency());
}

ExponentLattice lattice_of(const std::string& group) { return ExponentLattice::build(GroupSpec::parse(group)); }

// ---- density

struct DensityArgs {
    Common common;
    std::string group;
    std::string m = "1";
    std::string precision = "1e-12";
};

int run_density(const DensityArgs& a) {
    const auto L = lattice_of(a.group);
    const Real precision(a.precision);
    cli::Table t;
    t.header = {"m", "rho", "error_bound", "exact_zero"};
    t.numeric = {true, true, true, true};
    for (u64 m : parse_m_list(a.m)) {
        const auto d = rho(L, m, precision);
        t.add({std::to_string(m), d.exact_zero ? "0" : format_significant(d.value, a.common.digits, a.common.mode()),
               sci(d.error_bound), d.exact_zero ? "true" : "false"});
    }
    a.common.emit(t);
    return 0;
}

// ---- scan / compare

cli::Table comparison_table(const IndexHistogram& h, const ComparisonReport& r, const Common& c) {
    cli::Table t;
    t.header = {"m", "count", "empirical", "predicted", "deviation", "sigma", "flag"};
    t.numeric = {true, true, true, true, true, true, false};
    for (const auto& row : r.rows) {
        t.add({std::to_string(row.m), std::to_string(h.count(row.m)), format_significant(Real(row.empirical), c.digits, c.mode()),
               row.predicted == 0 ? "0" : format_significant(Real(row.predicted), c.digits, c.mode()),
               sci(Real(row.deviation)), sci(Real(row.sigma)), row.flagged ? "FLAG" : "ok"});
    }
    return t;
}

ComparisonReport compare_against_engine(const IndexHistogram& h, u64 rows) {
    const auto L = lattice_of(h.group);
    std::vector<DensityValue> d;
    for (u64 m = 1; m <= std::min(rows, h.m_max); ++m) d.push_back(rho(L, m));
    return compare(h, d);
}

struct ScanArgs {
    Common common;
    std::string group;
    std::string x = "1e8";
    std::string x_lo = "0";
    u64 m_max = 20;
    u64 compare_rows = 0;
    unsigned threads = 0;
    std::string segment = "4194304";
    std::string max_x = "1e10";
    std::string histogram;
    bool strict = false;
};

int run_scan(const ScanArgs& a) {
    const auto spec = GroupSpec::parse(a.group);
    ScanOptions o;
    o.x = parse_count(a.x);
    o.x_lo = parse_count(a.x_lo);
    o.m_max = a.m_max;
    o.threads = resolve_threads(a.threads);
    o.segment_size = parse_count(a.segment);
    o.max_x = parse_count(a.max_x);
    const auto h = scan(spec, o);
    if (!a.histogram.empty()) {
        std::ofstream out(a.histogram);
        if (!out) throw Error(ErrorCode::InvalidArgument, "cannot open '" + a.histogram + "' for writing");
        out << to_json(h, 2) << '\n';
    }
    const auto report = compare_against_engine(h, a.compare_rows ? a.compare_rows : a.m_max);
    a.common.emit(comparison_table(h, report, a.common));
    std::cerr << "primes " << h.prime_count() << ", excluded " << h.excluded.size() << ", overflow " << h.overflow << ", "
              << fixed_double(h.wall_seconds, 2) << " s on " << o.threads << " threads\n";
    if (a.strict && report.any_flagged) throw ConsistencyFailure("deviation above 4 sigma");
    return 0;
}

struct CompareArgs {
    Common common;
    std::vector<std::string> files;
    std::string merged;
    u64 compare_rows = 0;
    bool strict = false;
};

int run_compare(const CompareArgs& a) {
    std::vector<IndexHistogram> hs;
    for (const auto& f : a.files) {
        std::ifstream in(f);
        if (!in) throw Error(ErrorCode::InvalidArgument, "cannot read '" + f + "'");
        std::stringstream ss;
        ss << in.rdbuf();
        hs.push_back(histogram_from_json(ss.str()));
    }
    std::sort(hs.begin(), hs.end(), [](const auto& x, const auto& y) { return x.x_lo < y.x_lo; });
    IndexHistogram h = hs.front();
    for (std::size_t i = 1; i < hs.size(); ++i) h = merge(h, hs[i]);
    if (!a.merged.empty()) {
        std::ofstream out(a.merged);
        if (!out) throw Error(ErrorCode::InvalidArgument, "cannot open '" + a.merged + "' for writing");
        out << to_json(h, 2) << '\n';
    }
    const auto report = compare_against_engine(h, a.compare_rows ? a.compare_rows : h.m_max);
    a.common.emit(comparison_table(h, report, a.common));
    if (a.strict && report.any_flagged) throw ConsistencyFailure("deviation above 4 sigma");
    return 0;
}

// ---- vanish

std::string join(const std::vector<VanishCondition>& cs) {
    std::string s;
    for (auto c : cs) {
        if (!s.empty()) s += ',';
        s += to_string(c);
    }
    return s;
}

struct VanishArgs {
    Common common;
    std::string group;
    std::string m = "1";
};

// Shape-specific criteria run alongside the general sufficient conditions;
// an iff criterion that disagrees with the engine's exact zero is a bug.
int run_vanish(const VanishArgs& a) {
    const auto spec = GroupSpec::parse(a.group);
    const auto L = ExponentLattice::build(spec);
    std::vector<Rational> gens;
    for (const auto& g : spec.generators)
        if (g != 1) gens.push_back(g);
    const bool single = gens.size() == 1 && gens[0] != -1;
    bool minus_one_a = false;
    Rational a_value;
    if (gens.size() == 2 && (gens[0] == -1 || gens[1] == -1) && gens[0] != gens[1]) {
        minus_one_a = true;
        a_value = boost::multiprecision::abs(gens[0] == -1 ? gens[1] : gens[0]);
        minus_one_a = a_value != 1;
    }

    cli::Table t;
    t.header = {"m", "verdict", "conditions", "finiteness", "rho_zero"};
    t.numeric = {true, false, false, false, true};
    for (u64 m : parse_m_list(a.m)) {
        const auto general = sufficient_vanishing(L, m);
        std::vector<std::string> parts;
        if (!general.all_matched.empty()) parts.push_back(join(general.all_matched));
        std::optional<VanishVerdict> exact;
        if (single) exact = classify_lenstra(gens[0], m);
        else if (minus_one_a) exact = classify_minus_one_a(decompose(a_value), m);
        if (exact && !exact->all_matched.empty()) parts.push_back(join(exact->all_matched));

        const bool zero = rho(L, m).exact_zero;
        if ((exact && exact->vanishes != zero) || (general.vanishes && !zero)) {
            throw ConsistencyFailure("vanishing criteria disagree with the density engine at m = " + std::to_string(m));
        }
        Finiteness fin = general.finiteness;
        if (fin != Finiteness::Finite && exact && exact->finiteness != Finiteness::Unknown) fin = exact->finiteness;
        std::string cond;
        for (const auto& p : parts) cond += (cond.empty() ? "" : "/") + p;
        t.add({std::to_string(m), zero ? "VANISHES" : "NONE", cond.empty() ? "-" : cond, to_string(fin), zero ? "true" : "false"});
    }
    a.common.emit(t);
    return 0;
}

struct VanishScanArgs {
    Common common;
    bool cubes = false;
    unsigned power = 0;
    std::string a_max = "1000";
    u64 m_max = 40;
    bool verify = false;
};

std::string factor_string(const BigInt& a) {
    std::string s;
    for (const auto& [p, e] : factor(a)) {
        if (!s.empty()) s += '*';
        s += p.str();
        if (e > 1) s += "^" + std::to_string(e);
    }
    return s;
}

int run_vanish_scan(const VanishScanArgs& a) {
    const unsigned power = a.cubes ? 3 : a.power;
    const u64 a_max = parse_count(a.a_max);
    std::vector<BigInt> values;
    if (power >= 2) {
        for (u64 n = 2;; ++n) {
            const BigInt v = boost::multiprecision::pow(BigInt(n), power);
            if (v > a_max) break;
            values.push_back(v);
        }
    } else {
        if (a_max > 10'000'000) throw Error(ErrorCode::ResourceLimit, "a-max above 1e7 without a power filter");
        for (u64 v = 2; v <= a_max; ++v) values.push_back(BigInt(v));
    }
    const auto hits = minus_one_a_census(values, a.m_max);
    cli::Table t;
    t.header = {"a", "factorization", "m", "condition"};
    t.numeric = {true, false, true, false};
    for (const auto& h : hits) {
        if (a.verify) {
            const auto L = ExponentLattice::build(GroupSpec{{Rational(-1), Rational(h.a)}});
            if (!rho(L, h.m).exact_zero) throw ConsistencyFailure("census hit a = " + h.a.str() + " is not an exact zero");
            for (u64 m = 1; m < h.m; ++m)
                if (rho(L, m).exact_zero) throw ConsistencyFailure("census missed a = " + h.a.str() + ", m = " + std::to_string(m));
        }
        t.add({h.a.str(), factor_string(h.a), std::to_string(h.m), to_string(h.matched)});
    }
    a.common.emit(t);
    return 0;
}

// ---- kummer

struct KummerArgs {
    Common common;
    std::string group;
    u64 n = 1;
    u64 d = 1;
};

int run_kummer(const KummerArgs& a) {
    const auto L = lattice_of(a.group);
    cli::Table t;
    t.header = {"n", "d", "degree"};
    t.numeric = {true, true, true};
    t.add({std::to_string(a.n), std::to_string(a.d), kummer_degree(L, a.n, a.d).str()});
    a.common.emit(t);
    return 0;
}

// ---- selftest

int run_selftest(const Common& c) {
    cli::Table t;
    t.header = {"check", "result"};
    bool ok = true;
    auto record = [&](const std::string& name, bool pass) {
        ok = ok && pass;
        t.add({name, pass ? "pass" : "FAIL"});
    };
    const auto near = [](const Real& x, const char* ref, const char* tol) { return boost::multiprecision::abs(x - Real(ref)) < Real(tol); };

    record("artin_constant", near(artin_constant(), "0.373955813619202288054728", "1e-20"));
    const auto L = lattice_of("-1,2");
    record("rho(<-1,2>,1)", near(rho(L, 1).value, "0.5609337", "1e-7"));
    record("rho(<2,3>,1)", near(rho(lattice_of("2,3"), 1).value, "0.697501", "1e-6"));
    record("rho(<-1,27>,2)=0", rho(lattice_of("-1,27"), 2).exact_zero);
    const auto dec = decompose(Rational(5));
    record("minus_one_a vs engine", near(minus_one_a_density(dec, 6).value - rho(lattice_of("-1,5"), 6).value, "0", "1e-12"));
    record("moree vs engine", near(moree_odd_density(dec, 3).value - rho(lattice_of("5"), 3).value, "0", "1e-12"));
    record("index_of(7,<2>)=2", index_of(7, lattice_of("2")) == 2);

    ScanOptions o;
    o.x = 100000;
    o.m_max = 8;
    o.threads = 1;
    const auto h1 = scan(GroupSpec::parse("-1,2"), o);
    o.threads = 4;
    o.segment_size = 4096;
    const auto h4 = scan(GroupSpec::parse("-1,2"), o);
    record("scan thread invariance", h1.counts == h4.counts && h1.overflow == h4.overflow && h1.excluded == h4.excluded);
    record("scan partition", h1.prime_count() == 9592);
    c.emit(t);
    if (!ok) throw ConsistencyFailure("selftest failed");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Densities of primes with prescribed index for finitely generated subgroups of Q*"};
    app.set_config("--config", "", "key=value file supplying option defaults");
    app.require_subcommand(1);

    DensityArgs density;
    auto* c_density = app.add_subcommand("density", "rho(Gamma, m) over a range of m");
    c_density->add_option("-g,--group", density.group, "generators, e.g. -1,2,3/5")->required();
    c_density->add_option("-m,--m", density.m, "m, a range a..b, or a list");
    c_density->add_option("--precision", density.precision, "absolute error target");
    add_common(c_density, density.common);

    ScanArgs sc;
    auto* c_scan = app.add_subcommand("scan", "sieve primes and histogram their index");
    c_scan->add_option("-g,--group", sc.group)->required();
    c_scan->add_option("-x,--x", sc.x, "upper limit (inclusive), e.g. 1e8");
    c_scan->add_option("--x-lo", sc.x_lo, "lower limit (inclusive) for resumable partial scans");
    c_scan->add_option("--m-max", sc.m_max, "largest tracked index")->check(CLI::PositiveNumber);
    c_scan->add_option("--compare-rows", sc.compare_rows, "rows of the comparison table (default m-max)");
    c_scan->add_option("-t,--threads", sc.threads, "worker threads (INDEXDENSITY_THREADS overrides)");
    c_scan->add_option("--segment", sc.segment, "sieve segment length");
    c_scan->add_option("--max-x", sc.max_x, "refuse limits above this");
    c_scan->add_option("--histogram", sc.histogram, "write the histogram JSON here");
    c_scan->add_flag("--strict", sc.strict, "exit 4 when any row is flagged");
    add_common(c_scan, sc.common);

    CompareArgs cmp;
    auto* c_cmp = app.add_subcommand("compare", "merge histogram files and compare with predicted densities");
    c_cmp->add_option("histograms", cmp.files, "histogram JSON files with adjacent ranges")->required();
    c_cmp->add_option("--merged", cmp.merged, "write the merged histogram here");
    c_cmp->add_option("--compare-rows", cmp.compare_rows);
    c_cmp->add_flag("--strict", cmp.strict, "exit 4 when any row is flagged");
    add_common(c_cmp, cmp.common);

    VanishArgs van;
    auto* c_van = app.add_subcommand("vanish", "which vanishing criteria hold for Gamma and m");
    c_van->add_option("-g,--group", van.group)->required();
    c_van->add_option("-m,--m", van.m, "m, a range a..b, or a list");
    add_common(c_van, van.common);

    VanishScanArgs vs;
    auto* c_vs = app.add_subcommand("vanish-scan", "list a with rho(<-1,a>, m) = 0 for some m <= m-max");
    auto* f_cubes = c_vs->add_flag("--minus-one-cubes", vs.cubes, "restrict a to perfect cubes");
    c_vs->add_option("--power", vs.power, "restrict a to perfect k-th powers")->excludes(f_cubes);
    c_vs->add_option("--a-max", vs.a_max);
    c_vs->add_option("--m-max", vs.m_max)->check(CLI::PositiveNumber);
    c_vs->add_flag("--verify", vs.verify, "cross-check every hit against the density engine");
    add_common(c_vs, vs.common);

    KummerArgs km;
    auto* c_km = app.add_subcommand("kummer", "[Q(zeta_n, Gamma^(1/d)) : Q]");
    c_km->add_option("-g,--group", km.group)->required();
    c_km->add_option("-n,--n", km.n)->required()->check(CLI::PositiveNumber);
    c_km->add_option("-d,--d", km.d)->required()->check(CLI::PositiveNumber);
    add_common(c_km, km.common);

    Common st;
    auto* c_st = app.add_subcommand("selftest", "fast internal consistency checks");
    add_common(c_st, st);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitPrecondition;
    }

    try {
        if (*c_density) return run_density(density);
        if (*c_scan) return run_scan(sc);
        if (*c_cmp) return run_compare(cmp);
        if (*c_van) return run_vanish(van);
        if (*c_vs) return run_vanish_scan(vs);
        if (*c_km) return run_kummer(km);
        if (*c_st) return run_selftest(st);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_code_for(e.code());
    } catch (const ConsistencyFailure& e) {
        std::cerr << "consistency failure: " << e.what() << '\n';
        return kExitConsistency;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitPrecondition;
    }
    return kExitPrecondition;
}
