#include <pybind11/pybind11.h>

#include <algorithm>
#include <string>

#include "qtor/classify.hpp"
#include "qtor/discriminant.hpp"
#include "qtor/embedding.hpp"
#include "qtor/errors.hpp"
#include "qtor/io.hpp"
#include "qtor/stable.hpp"

namespace py = pybind11;
using namespace qtor;

namespace {

ClassifyOptions options_for(long long max_group_order) {
    if (max_group_order <= 0) throw invalid_input("max_group_order must be positive");
    ClassifyOptions opts;
    opts.max_search_order = max_group_order;
    opts.max_eval_order = std::max<long long>(max_group_order, 10000);
    return opts;
}

}  // namespace

// Every entry point takes and returns the canonical JSON documents of the
// command line tool, so exact integers and rationals cross the boundary as
// text. The python package wraps these in dict-level helpers.
PYBIND11_MODULE(_qtor, m) {
    m.doc() = "exact arithmetic for quadratic functions on torsion groups";

    py::register_exception<invalid_input>(m, "InvalidInput", PyExc_ValueError);
    py::register_exception<size_limit_error>(m, "SizeLimitError", PyExc_RuntimeError);

    m.def(
        "discriminant",
        [](const std::string& lattice) {
            return serialize_quad_file(discriminant_quadratic(parse_lattice_file(lattice)));
        },
        py::arg("lattice"),
        "Discriminant function of a lattice document as a quadratic function document.");

    m.def(
        "gauss",
        [](const std::string& quad, long long max_group_order) {
            return serialize_gauss(
                gauss_sum(parse_quad_file(quad), options_for(max_group_order)));
        },
        py::arg("quad"), py::arg("max_group_order") = 512,
        "Exact Gauss sum of a quadratic function document.");

    m.def(
        "invariants",
        [](const std::string& quad, long long max_group_order) {
            return serialize_invariants(
                invariants(parse_quad_file(quad), options_for(max_group_order)));
        },
        py::arg("quad"), py::arg("max_group_order") = 512,
        "Classifying data of a quadratic function document.");

    m.def(
        "isomorphic",
        [](const std::string& a, const std::string& b, bool witness,
           long long max_group_order) {
            return serialize_decision(decide_isomorphic(parse_quad_file(a), parse_quad_file(b),
                                                        options_for(max_group_order)),
                                      witness);
        },
        py::arg("a"), py::arg("b"), py::arg("witness") = false,
        py::arg("max_group_order") = 512,
        "Isomorphism decision between two quadratic function documents.");

    m.def(
        "stable_equivalent",
        [](const std::string& a, const std::string& b, long long max_group_order) {
            return serialize_certificate(stably_equivalent(parse_lattice_file(a),
                                                           parse_lattice_file(b),
                                                           options_for(max_group_order)));
        },
        py::arg("a"), py::arg("b"), py::arg("max_group_order") = 512,
        "Stable equivalence certificate for two lattice documents.");

    m.def(
        "solve_char",
        [](const std::string& lattice, const std::string& quad) {
            return serialize_membership(
                image_membership(parse_lattice_file(lattice).lattice, parse_quad_file(quad)));
        },
        py::arg("lattice"), py::arg("quad"),
        "Characteristic form on the lattice inducing the given function, if any.");

    m.def(
        "refinements",
        [](const std::string& pairing, long long max_group_order) {
            return serialize_refinements(
                enumerate_refinements(parse_pairing_file(pairing),
                                      options_for(max_group_order)));
        },
        py::arg("pairing"), py::arg("max_group_order") = 512,
        "All quadratic refinements of the pairing in a document.");
}
