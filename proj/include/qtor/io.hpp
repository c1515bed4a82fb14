#pragma once

#include <string>
#include <vector>

#include "qtor/classify.hpp"
#include "qtor/embedding.hpp"
#include "qtor/lattice.hpp"
#include "qtor/stable.hpp"
#include "qtor/torsion_quad.hpp"

namespace qtor {

// Lattice documents: {"gram": [[..]], "char": [..]} with char optional on
// input (canonical characteristic form by default). Quadratic function
// documents: {"orders", "b", "q", "divisible_rank", "kernel_hom"} with
// rationals as "p/q" strings; divisible_rank and kernel_hom optional on
// input. Serializers emit two-space indented UTF-8 with sorted keys and a
// trailing newline; serialize(parse(x)) is byte-identical on such output.
// Parse failures throw invalid_input naming the offending field.

Triple parse_lattice_file(const std::string& text);
std::string serialize_lattice_file(const Triple& t);

StructuredQuadratic parse_quad_file(const std::string& text);
std::string serialize_quad_file(const StructuredQuadratic& q);

// orders and b of a quadratic function document, ignoring any value fields
TorsionBilinear parse_pairing_file(const std::string& text);

// result documents emitted by the command line tool
std::string serialize_gauss(const CyclotomicNumber& s);
std::string serialize_invariants(const InvariantBundle& inv);
std::string serialize_decision(const IsoDecision& dec, bool with_witness);
std::string serialize_certificate(const StabilizationCertificate& cert);
std::string serialize_membership(const MembershipResult& m);
std::string serialize_refinements(const std::vector<StructuredQuadratic>& qs);

}  // namespace qtor
