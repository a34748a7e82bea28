// Python bindings. Reports cross the boundary as JSON text and are decoded
// on the Python side.

#include "hopflab/error.hpp"
#include "hopflab/kodaira.hpp"
#include "hopflab/relation_lattice.hpp"
#include "hopflab/reports.hpp"
#include "hopflab/tensor_invariants.hpp"
#include "hopflab/zariski_closure.hpp"

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace hopflab;

namespace {

CommonOptions common(std::uint64_t seed, std::optional<double> tolerance) {
    return CommonOptions{seed, tolerance, false};
}

json parse_json(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw Error(ErrorCode::ParseError, e.what());
    }
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.attr("__version__") = kToolVersion;
    m.attr("DEFAULT_SEED") = kDefaultSeed;

    static py::exception<Error> error_type(m, "HopflabError", PyExc_ValueError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p)
                std::rethrow_exception(p);
        } catch (const Error& e) {
            py::tuple args = py::make_tuple(std::string(to_string(e.code())), e.what());
            PyErr_SetObject(error_type.ptr(), args.ptr());
        }
    });

    py::class_<ContractionSpec>(m, "Spec")
        .def_static("from_json", [](const std::string& text) { return spec_from_text(text); }, py::arg("text"))
        .def("to_json", [](const ContractionSpec& s) { return spec_to_json(s).dump(); })
        .def_property_readonly("n", &ContractionSpec::n)
        .def_property_readonly("is_exact", &ContractionSpec::is_exact)
        .def("__len__", &ContractionSpec::n)
        .def("__repr__", [](const ContractionSpec& s) { return "Spec(" + spec_to_json(s).dump() + ")"; });

    m.def("relation_lattice", [](const ContractionSpec& s, std::optional<double> tolerance) {
        return lattice_to_json(relation_lattice(s, heuristic_options(common(kDefaultSeed, tolerance)))).dump();
    }, py::arg("spec"), py::arg("tolerance") = py::none());

    m.def("verify_real_part", &verify_real_part, py::arg("spec"));

    m.def("invariant_dimension", [](const ContractionSpec& s, std::size_t k, std::size_t l) {
        return invariant_dimension(s, k, l);
    }, py::arg("spec"), py::arg("k"), py::arg("l"));

    m.def("potential", [](const ContractionSpec& s, double lambda, const std::vector<std::complex<double>>& z) {
        return potential(z, ShellPotential(s, lambda));
    }, py::arg("spec"), py::arg("lam"), py::arg("z"));

    m.def("flow", [](const ContractionSpec& s, double lambda, const std::vector<std::complex<double>>& z, double t) {
        return flow(z, ShellPotential(s, lambda), t);
    }, py::arg("spec"), py::arg("lam"), py::arg("z"), py::arg("t"));

    m.def("kodaira_dimension", [](const ContractionSpec& s) { return kodaira_dimension(s).value; },
          py::arg("spec"));

    m.def("plurigenus", [](const ContractionSpec& s, std::size_t k, std::size_t verify_degree) {
        return pluricanonical_dimension(s, k, verify_degree).count;
    }, py::arg("spec"), py::arg("k"), py::arg("verify_degree") = 0);

    m.def("analyze_report", [](const ContractionSpec& s, std::vector<std::pair<std::size_t, std::size_t>> invariants,
                               std::optional<double> lambda, std::size_t samples, std::uint64_t seed,
                               std::optional<double> tolerance) {
        AnalyzeOptions o;
        o.common = common(seed, tolerance);
        o.invariants = std::move(invariants);
        o.lambda = lambda;
        o.samples = samples;
        return analyze_report(s, o).dump();
    }, py::arg("spec"), py::arg("invariants") = std::vector<std::pair<std::size_t, std::size_t>>{{1, 1}},
       py::arg("lam") = py::none(), py::arg("samples") = 8, py::arg("seed") = kDefaultSeed,
       py::arg("tolerance") = py::none());

    m.def("invariants_report", [](const ContractionSpec& s, std::size_t k, std::size_t l, bool list,
                                  std::optional<double> tolerance) {
        return invariants_report(s, k, l, list, common(kDefaultSeed, tolerance)).dump();
    }, py::arg("spec"), py::arg("k"), py::arg("l"), py::arg("list") = false, py::arg("tolerance") = py::none());

    m.def("potential_report", [](const ContractionSpec& s, double lambda, std::optional<Point> at,
                                 std::size_t samples, bool psd_threshold, std::uint64_t seed) {
        PotentialOptions o;
        o.common = common(seed, std::nullopt);
        o.lambda = lambda;
        o.at = std::move(at);
        o.samples = samples;
        o.psd_threshold = psd_threshold;
        return potential_report(s, o).dump();
    }, py::arg("spec"), py::arg("lam"), py::arg("at") = py::none(), py::arg("samples") = 20,
       py::arg("psd_threshold") = false, py::arg("seed") = kDefaultSeed);

    m.def("verify_lee_report", [](const ContractionSpec& s, const std::string& field, std::optional<Point> at) {
        return verify_lee_report(s, field_from_json(parse_json(field)), at, common(kDefaultSeed, std::nullopt)).dump();
    }, py::arg("spec"), py::arg("field"), py::arg("at") = py::none());

    m.def("kodaira_report", [](const ContractionSpec& s, std::size_t max_k, std::size_t verify_degree) {
        return kodaira_report(s, max_k, verify_degree, common(kDefaultSeed, std::nullopt)).dump();
    }, py::arg("spec"), py::arg("max_k") = 10, py::arg("verify_degree") = 20);
}
