#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <sstream>

#include "flatwalk/architecture.hpp"
#include "flatwalk/bounds.hpp"
#include "flatwalk/exact.hpp"
#include "flatwalk/haar.hpp"
#include "flatwalk/io.hpp"
#include "flatwalk/walk.hpp"

namespace py = pybind11;
using namespace flatwalk;

namespace {

Architecture make_architecture(int n, int q,
                               const std::vector<std::vector<std::pair<int, int>>>& layers,
                               std::optional<int> p,
                               std::optional<std::vector<double>> generator_norms, bool lenient) {
    std::vector<std::vector<Gate>> converted;
    converted.reserve(layers.size());
    for (const auto& layer : layers) {
        std::vector<Gate> gates;
        gates.reserve(layer.size());
        for (const auto& [a, b] : layer) gates.push_back({a, b});
        converted.push_back(std::move(gates));
    }
    return Architecture(n, q, std::move(converted), p, std::move(generator_norms), lenient);
}

EstimatorConfig make_config(double epsilon, double delta, std::uint64_t seed,
                            std::optional<std::uint64_t> samples, const std::string& method,
                            unsigned workers, bool reuse_trajectory) {
    EstimatorConfig cfg;
    cfg.epsilon = epsilon;
    cfg.delta = delta;
    cfg.seed = seed;
    cfg.sample_override = samples;
    if (method == "unbiased")
        cfg.method = WalkMethod::unbiased;
    else if (method == "biased")
        cfg.method = WalkMethod::biased;
    else
        throw DomainError("method must be 'biased' or 'unbiased'");
    cfg.workers = workers;
    cfg.reuse_trajectory = reuse_trajectory;
    return cfg;
}

OperatorBasis make_basis(int q, const std::string& name) {
    if (name == "auto") return OperatorBasis::standard(q);
    if (name == "pauli") return OperatorBasis(q, OperatorBasis::Kind::pauli);
    if (name == "clock-shift") return OperatorBasis(q, OperatorBasis::Kind::clock_shift);
    throw DomainError("basis must be auto, pauli, or clock-shift");
}

}  // namespace

PYBIND11_MODULE(flatwalk, m) {
    m.doc() = "Landscape-flatness estimators, exact oracles, and analytic bounds "
              "for layered random-entangler circuits";

    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<flatwalk::ParseError>(m, "ParseError", PyExc_ValueError);

    py::class_<Architecture>(m, "Architecture")
        .def(py::init(&make_architecture), py::arg("n"), py::arg("q"), py::arg("layers"),
             py::arg("p") = std::nullopt, py::arg("generator_norms") = std::nullopt,
             py::arg("lenient") = false)
        .def_static("brickwork_1d", &brickwork_1d, py::arg("n"), py::arg("q"), py::arg("d"))
        .def_static("from_json",
                    [](const std::string& text) {
                        return architecture_from_json(nlohmann::json::parse(text));
                    })
        .def_property_readonly("n", &Architecture::n)
        .def_property_readonly("q", &Architecture::q)
        .def_property_readonly("depth", &Architecture::depth)
        .def_property_readonly("num_gates", &Architecture::num_gates)
        .def("validate",
             [](const Architecture& arch) {
                 std::vector<std::string> messages;
                 for (const Violation& v : validate(arch)) messages.push_back(v.message);
                 return messages;
             })
        .def("regular_connectivity",
             [](const Architecture& arch, int max_exact_n) {
                 return regular_connectivity(arch, max_exact_n);
             },
             py::arg("max_exact_n") = 16)
        .def("gates_crossing",
             [](const Architecture& arch, const std::vector<int>& support) {
                 return gates_crossing(arch, support).gates_crossing;
             },
             py::arg("support"))
        .def("backward_lightcone",
             [](const Architecture& arch, const std::vector<int>& support) {
                 return backward_lightcone(arch, support).sites;
             },
             py::arg("support"))
        .def("to_json",
             [](const Architecture& arch) { return architecture_to_json(arch).dump(); })
        .def("__repr__", [](const Architecture& arch) {
            std::ostringstream ss;
            ss << "Architecture(n=" << arch.n() << ", q=" << arch.q() << ", d=" << arch.depth()
               << ", m=" << arch.num_gates() << ")";
            return ss.str();
        });

    py::class_<SupportPattern>(m, "SupportPattern")
        .def(py::init<>())
        .def(py::init<std::vector<std::pair<int, int>>>(), py::arg("entries"))
        .def_static("from_support", &SupportPattern::from_support, py::arg("sites"),
                    py::arg("op_index") = 1)
        .def_property_readonly("weight", &SupportPattern::weight)
        .def_property_readonly("support", &SupportPattern::support)
        .def_property_readonly("entries", &SupportPattern::entries)
        .def("__repr__", [](const SupportPattern& p) {
            std::ostringstream ss;
            ss << "SupportPattern(weight=" << p.weight() << ")";
            return ss.str();
        });

    py::class_<HamiltonianSpec>(m, "Hamiltonian")
        .def_static("from_json",
                    [](const std::string& text) {
                        return hamiltonian_from_json(nlohmann::json::parse(text));
                    })
        .def_static("from_pauli",
                    [](const std::vector<std::pair<std::string, std::complex<double>>>& terms) {
                        return parse_pauli(terms);
                    })
        .def_property_readonly("n", &HamiltonianSpec::n)
        .def_property_readonly("q", &HamiltonianSpec::q)
        .def_property_readonly("sum_c2", &HamiltonianSpec::sum_c2)
        .def_property_readonly("num_terms",
                               [](const HamiltonianSpec& s) { return s.terms().size(); })
        .def("operator_norm_bound", [](const HamiltonianSpec& s) { return operator_norm_bound(s); })
        .def("to_json", [](const HamiltonianSpec& s) { return hamiltonian_to_json(s).dump(); });

    py::class_<EstimateReport>(m, "EstimateReport")
        .def_readonly("estimate", &EstimateReport::estimate)
        .def_readonly("std_error", &EstimateReport::std_error)
        .def_readonly("n_samples", &EstimateReport::n_samples)
        .def_readonly("seed", &EstimateReport::seed)
        .def_readonly("sum_c2", &EstimateReport::sum_c2)
        .def_readonly("method", &EstimateReport::method)
        .def("__repr__", [](const EstimateReport& r) {
            std::ostringstream ss;
            ss << "EstimateReport(estimate=" << r.estimate << ", std_error=" << r.std_error
               << ", n_samples=" << r.n_samples << ", method='" << r.method << "')";
            return ss.str();
        });

    py::class_<FirstMomentReport>(m, "FirstMomentReport")
        .def_readonly("estimate", &FirstMomentReport::estimate)
        .def_readonly("std_error", &FirstMomentReport::std_error)
        .def_readonly("imag_mean", &FirstMomentReport::imag_mean)
        .def_readonly("imag_std_error", &FirstMomentReport::imag_std_error)
        .def_readonly("n_samples", &FirstMomentReport::n_samples);

    py::class_<GradientInterval>(m, "GradientInterval")
        .def_readonly("lower", &GradientInterval::lower)
        .def_readonly("upper", &GradientInterval::upper)
        .def("consistent", &GradientInterval::consistent);

    m.def(
        "estimate_coverage",
        [](const Architecture& arch, const SupportPattern& x, double epsilon, double delta,
           std::uint64_t seed, std::optional<std::uint64_t> samples, unsigned workers) {
            return estimate_coverage(arch, x,
                                     make_config(epsilon, delta, seed, samples, "biased", workers,
                                                 false));
        },
        py::arg("arch"), py::arg("pattern"), py::arg("epsilon") = 0.05, py::arg("delta") = 0.01,
        py::arg("seed") = 0, py::arg("samples") = std::nullopt, py::arg("workers") = 1);

    m.def(
        "estimate_coverage_unbiased",
        [](const Architecture& arch, const SupportPattern& x, double epsilon, double delta,
           std::uint64_t seed, std::optional<std::uint64_t> samples, unsigned workers) {
            return estimate_coverage_unbiased(
                arch, x, make_config(epsilon, delta, seed, samples, "unbiased", workers, false));
        },
        py::arg("arch"), py::arg("pattern"), py::arg("epsilon") = 0.05, py::arg("delta") = 0.01,
        py::arg("seed") = 0, py::arg("samples") = std::nullopt, py::arg("workers") = 1);

    m.def(
        "estimate_second_moment",
        [](const Architecture& arch, const HamiltonianSpec& spec, double epsilon, double delta,
           std::uint64_t seed, std::optional<std::uint64_t> samples, const std::string& method,
           unsigned workers, bool reuse_trajectory) {
            return estimate_second_moment(
                arch, spec,
                make_config(epsilon, delta, seed, samples, method, workers, reuse_trajectory));
        },
        py::arg("arch"), py::arg("ham"), py::arg("epsilon") = 0.05, py::arg("delta") = 0.01,
        py::arg("seed") = 0, py::arg("samples") = std::nullopt, py::arg("method") = "biased",
        py::arg("workers") = 1, py::arg("reuse_trajectory") = false);

    m.def("hoeffding_sample_count", &hoeffding_sample_count, py::arg("epsilon"), py::arg("delta"),
          py::arg("sum_c2") = 1.0);

    m.def("exact_coverage", &exact_coverage, py::arg("arch"), py::arg("pattern"),
          py::arg("max_n") = kDefaultTransferMatrixCap);
    m.def("exact_second_moment", &exact_second_moment, py::arg("arch"), py::arg("ham"),
          py::arg("max_n") = kDefaultTransferMatrixCap);
    m.def("exact_coverage_enumeration", &exact_coverage_enumeration, py::arg("arch"),
          py::arg("pattern"), py::arg("max_n") = kDefaultEnumerationSiteCap,
          py::arg("max_m") = kDefaultEnumerationGateCap);
    m.def("exact_absorption_probability", &exact_absorption_probability, py::arg("arch"),
          py::arg("max_n") = kDefaultTransferMatrixCap);

    m.def(
        "haar_coverage",
        [](const Architecture& arch, const SupportPattern& x, std::uint64_t samples,
           std::uint64_t seed, const std::string& basis) {
            return haar_coverage(arch, x, make_basis(arch.q(), basis), samples, seed);
        },
        py::arg("arch"), py::arg("pattern"), py::arg("samples") = 10000, py::arg("seed") = 0,
        py::arg("basis") = "auto");

    m.def(
        "haar_first_moment",
        [](const Architecture& arch, const HamiltonianSpec& spec, std::uint64_t samples,
           std::uint64_t seed, const std::string& basis) {
            return haar_first_moment(arch, spec, make_basis(arch.q(), basis), samples, seed);
        },
        py::arg("arch"), py::arg("ham"), py::arg("samples") = 10000, py::arg("seed") = 0,
        py::arg("basis") = "auto");

    m.def("coverage_lower_general", &coverage_lower_general, py::arg("q"), py::arg("n"),
          py::arg("weight"), py::arg("crossing_gates"));
    m.def(
        "coverage_upper_general",
        [](int q, int n, int weight, int d, int r) {
            const CappedBound b = coverage_upper_general(q, n, weight, d, r);
            return py::make_tuple(b.value, b.vacuous);
        },
        py::arg("q"), py::arg("n"), py::arg("weight"), py::arg("d"), py::arg("r"));
    m.def("coverage_lower_1d", &coverage_lower_1d, py::arg("q"), py::arg("n"), py::arg("k"),
          py::arg("d"));
    m.def(
        "coverage_upper_1d",
        [](int q, int n, int k, int weight, int d) {
            const CappedBound b = coverage_upper_1d(q, n, k, weight, d);
            return py::make_tuple(b.value, b.vacuous);
        },
        py::arg("q"), py::arg("n"), py::arg("k"), py::arg("weight"), py::arg("d"));
    m.def("absorption_bound", &absorption_bound, py::arg("q"), py::arg("n"));
    m.def(
        "gradient_interval",
        [](double second_moment, double sum_generator_sq, double h_norm) {
            return gradient_interval({second_moment, sum_generator_sq, h_norm});
        },
        py::arg("second_moment"), py::arg("sum_generator_sq"), py::arg("h_norm"));
}
