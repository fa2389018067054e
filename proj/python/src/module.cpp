#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "indexdensity/density.hpp"
#include "indexdensity/error.hpp"
#include "indexdensity/euler_kappa.hpp"
#include "indexdensity/format.hpp"
#include "indexdensity/kummer.hpp"
#include "indexdensity/prime_harness.hpp"
#include "indexdensity/rank_one.hpp"
#include "indexdensity/vanishing.hpp"

namespace py = pybind11;
using namespace indexdensity;

namespace {

// Exact and high-precision values cross the boundary as strings.
std::string full(const Real& v) { return v.str(40, std::ios::scientific); }

py::dict density_dict(const DensityValue& d) {
    py::dict out;
    out["value"] = static_cast<double>(d.value);
    out["value_str"] = full(d.value);
    out["error_bound"] = static_cast<double>(d.error_bound);
    out["exact_zero"] = d.exact_zero;
    out["rational"] = d.rational.str();
    out["rank"] = d.rank;
    return out;
}

py::dict verdict_dict(const VanishVerdict& v) {
    py::dict out;
    out["vanishes"] = v.vanishes;
    out["matched"] = to_string(v.matched);
    std::vector<std::string> all;
    for (auto c : v.all_matched) all.emplace_back(to_string(c));
    out["all_matched"] = all;
    out["finiteness"] = to_string(v.finiteness);
    return out;
}

py::dict histogram_dict(const IndexHistogram& h) {
    py::dict out;
    out["group"] = h.group;
    out["x_lo"] = h.x_lo;
    out["x_hi"] = h.x_hi;
    out["m_max"] = h.m_max;
    out["counts"] = h.counts;
    out["overflow"] = h.overflow;
    out["excluded"] = h.excluded;
    out["total_primes"] = h.total_primes;
    out["json"] = to_json(h, -1);
    return out;
}

Real precision_of(const std::string& p) { return Real(p); }

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Densities of primes with prescribed index for subgroups of Q*";

    static py::exception<Error> error(m, "IndexDensityError", PyExc_ValueError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            PyErr_SetString(error.ptr(), e.what());
        }
    });

    py::class_<ExponentLattice>(m, "Group")
        .def(py::init([](const std::string& spec) { return ExponentLattice::build(GroupSpec::parse(spec)); }), py::arg("spec"))
        .def_property_readonly("spec", [](const ExponentLattice& L) { return L.spec().to_string(); })
        .def_property_readonly("rank", &ExponentLattice::rank)
        .def_property_readonly("support", [](const ExponentLattice& L) {
            std::vector<std::string> s;
            for (const auto& p : L.support()) s.push_back(p.str());
            return s;
        })
        .def_property_readonly("bad_primes", [](const ExponentLattice& L) {
            std::vector<std::string> s;
            for (const auto& p : L.bad_primes()) s.push_back(p.str());
            return s;
        })
        .def("gamma_m_order", [](const ExponentLattice& L, u64 n) { return L.gamma_m_order(n).str(); }, py::arg("m"))
        .def("two_torsion_size", [](const ExponentLattice& L, unsigned alpha) { return L.two_torsion(alpha).size(); }, py::arg("alpha"))
        .def("tilde_gamma_size", [](const ExponentLattice& L, u64 n) { return tilde_gamma(L, n).size(); }, py::arg("m"))
        .def("kummer_degree", [](const ExponentLattice& L, u64 n, u64 d) { return kummer_degree(L, n, d).str(); }, py::arg("n"), py::arg("d"))
        .def("rho", [](const ExponentLattice& L, u64 n, const std::string& p) { return density_dict(rho(L, n, precision_of(p))); },
             py::arg("m"), py::arg("precision") = "1e-12")
        .def("rho_bracket", [](const ExponentLattice& L, u64 n) { return rho_bracket(L, n).str(); }, py::arg("m"))
        .def("rho_series", [](const ExponentLattice& L, u64 n, u64 K) {
            const auto s = rho_series_oracle(L, n, K);
            return py::make_tuple(static_cast<double>(s.value), static_cast<double>(s.tail_bound));
        }, py::arg("m"), py::arg("K") = 10000)
        .def("vanishing", [](const ExponentLattice& L, u64 n) { return verdict_dict(sufficient_vanishing(L, n)); }, py::arg("m"))
        .def("index_of", [](const ExponentLattice& L, u64 p) { return index_of(p, L); }, py::arg("p"))
        .def("__repr__", [](const ExponentLattice& L) { return "Group('" + L.spec().to_string() + "')"; });

    m.def("euler_kappa", [](unsigned r) { return full(euler_kappa(r).kappa_odd); }, py::arg("r"));
    m.def("artin_constant", [] { return full(artin_constant()); });

    m.def("hooley_density", [](const std::string& a) { return density_dict(hooley_density(decompose(Rational(a)))); }, py::arg("a"));
    m.def("moree_odd_density", [](const std::string& a, u64 n) { return density_dict(moree_odd_density(decompose(Rational(a)), n)); },
          py::arg("a"), py::arg("m"));
    m.def("minus_one_a_density", [](const std::string& a, u64 n) { return density_dict(minus_one_a_density(Rational(a), n)); },
          py::arg("a"), py::arg("m"));

    m.def("classify_lenstra", [](const std::string& g, u64 n) { return verdict_dict(classify_lenstra(Rational(g), n)); },
          py::arg("g"), py::arg("m"));
    m.def("classify_minus_one_a", [](const std::string& a, u64 n) { return verdict_dict(classify_minus_one_a(decompose(Rational(a)), n)); },
          py::arg("a"), py::arg("m"));
    m.def("minus_one_a_census", [](const std::vector<std::string>& values, u64 m_max) {
        std::vector<BigInt> v;
        for (const auto& s : values) v.emplace_back(s);
        std::vector<py::tuple> out;
        for (const auto& h : minus_one_a_census(v, m_max)) out.push_back(py::make_tuple(h.a.str(), h.m, to_string(h.matched)));
        return out;
    }, py::arg("values"), py::arg("m_max"));

    m.def("scan", [](const std::string& spec, u64 x, u64 m_max, unsigned threads, u64 x_lo) {
        ScanOptions o;
        o.x = x;
        o.x_lo = x_lo;
        o.m_max = m_max;
        o.threads = threads;
        IndexHistogram h;
        {
            py::gil_scoped_release release;
            h = scan(GroupSpec::parse(spec), o);
        }
        return histogram_dict(h);
    }, py::arg("group"), py::arg("x"), py::arg("m_max") = 20, py::arg("threads") = 1, py::arg("x_lo") = 0);
    m.def("merge_histograms", [](const std::string& a, const std::string& b) {
        return histogram_dict(merge(histogram_from_json(a), histogram_from_json(b)));
    }, py::arg("a"), py::arg("b"));

    m.def("format_significant", [](const std::string& v, unsigned digits, bool round) {
        return format_significant(Real(v), digits, round ? DisplayMode::Round : DisplayMode::Truncate);
    }, py::arg("value"), py::arg("digits") = 7, py::arg("round") = false);
}
