#include "qtor/io.hpp"

#include <limits>
#include <utility>

#include "json.hpp"
#include "qtor/errors.hpp"

namespace qtor {
namespace {

using nlohmann::json;

std::string finish(const json& j) { return j.dump(2) + "\n"; }

json parse_document(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw invalid_input("document is not valid JSON");
    if (!j.is_object()) throw invalid_input("document must be a JSON object");
    return j;
}

Int int_from(const json& j, const std::string& field) {
    if (!j.is_number_integer())
        throw invalid_input("field " + field + " must hold integers");
    return Int(j.get<long long>());
}

json int_to(const Int& v) {
    static const Int lo = std::numeric_limits<long long>::min();
    static const Int hi = std::numeric_limits<long long>::max();
    if (v < lo || v > hi) throw invalid_input("integer out of range for the file format");
    return v.convert_to<long long>();
}

std::vector<Int> int_vector(const json& j, const std::string& field) {
    if (!j.is_array()) throw invalid_input("field " + field + " must be an array");
    std::vector<Int> out;
    for (const auto& e : j) out.push_back(int_from(e, field));
    return out;
}

json int_vector_to(const std::vector<Int>& v) {
    json out = json::array();
    for (const auto& e : v) out.push_back(int_to(e));
    return out;
}

IntMat int_matrix(const json& j, const std::string& field) {
    if (!j.is_array()) throw invalid_input("field " + field + " must be an array of rows");
    std::vector<std::vector<Int>> rows;
    for (const auto& r : j) rows.push_back(int_vector(r, field));
    std::size_t cols = rows.empty() ? 0 : rows[0].size();
    IntMat m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) throw invalid_input("field " + field + " has ragged rows");
        for (std::size_t c = 0; c < cols; ++c) m.at(i, c) = rows[i][c];
    }
    return m;
}

json int_matrix_to(const IntMat& m) {
    json out = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(int_to(m.at(i, j)));
        out.push_back(row);
    }
    return out;
}

QmodZ residue_from(const json& j, const std::string& field) {
    if (!j.is_string())
        throw invalid_input("field " + field + " must hold rational strings like \"p/q\"");
    try {
        return QmodZ(parse_rational(j.get<std::string>()));
    } catch (const invalid_input&) {
        throw invalid_input("field " + field + " holds a malformed rational \"" +
                            j.get<std::string>() + "\"");
    }
}

std::vector<QmodZ> residue_vector(const json& j, const std::string& field) {
    if (!j.is_array()) throw invalid_input("field " + field + " must be an array");
    std::vector<QmodZ> out;
    for (const auto& e : j) out.push_back(residue_from(e, field));
    return out;
}

json residue_vector_to(const std::vector<QmodZ>& v) {
    json out = json::array();
    for (const auto& e : v) out.push_back(format_rational(e.rep()));
    return out;
}

QMat residue_matrix(const json& j, const std::string& field) {
    if (!j.is_array()) throw invalid_input("field " + field + " must be an array of rows");
    std::vector<std::vector<QmodZ>> rows;
    for (const auto& r : j) rows.push_back(residue_vector(r, field));
    std::size_t cols = rows.empty() ? 0 : rows[0].size();
    QMat m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) throw invalid_input("field " + field + " has ragged rows");
        for (std::size_t c = 0; c < cols; ++c) m.at(i, c) = rows[i][c];
    }
    return m;
}

json residue_matrix_to(const QMat& m) {
    json out = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j)
            row.push_back(format_rational(m.at(i, j).rep()));
        out.push_back(row);
    }
    return out;
}

const json& require(const json& doc, const std::string& field) {
    auto it = doc.find(field);
    if (it == doc.end()) throw invalid_input("missing field " + field);
    return *it;
}

std::size_t size_from(const json& doc, const std::string& field) {
    Int v = int_from(require(doc, field), field);
    if (v < 0) throw invalid_input("field " + field + " must be nonnegative");
    return to_size(v);
}

TorsionBilinear pairing_from(const json& doc) {
    FiniteAbelianGroup group = make_group(int_vector(require(doc, "orders"), "orders"));
    return make_torsion_bilinear(std::move(group), residue_matrix(require(doc, "b"), "b"));
}

json gauss_to(const CyclotomicNumber& s) {
    json out;
    out["level"] = int_to(Int(s.level));
    out["coeffs"] = int_vector_to(s.coeffs);
    out["norm_square"] = int_to(s.norm_square);
    return out;
}

json witness_to(const GroupIso& psi) {
    json out;
    out["source_orders"] = int_vector_to(psi.source.orders);
    out["target_orders"] = int_vector_to(psi.target.orders);
    out["divisible_rank"] = int_to(Int(psi.divisible_rank));
    out["matrix"] = int_matrix_to(psi.matrix);
    out["mixing"] = residue_matrix_to(psi.mixing);
    out["kernel_matrix"] = int_matrix_to(psi.kernel_matrix);
    return out;
}

}  // namespace

Triple parse_lattice_file(const std::string& text) {
    json doc = parse_document(text);
    BilinearLattice f = make_lattice(int_matrix(require(doc, "gram"), "gram"));
    CharacteristicForm c = doc.contains("char")
                               ? CharacteristicForm{int_vector(doc["char"], "char")}
                               : canonical_char(f);
    return make_triple(std::move(f), std::move(c));
}

std::string serialize_lattice_file(const Triple& t) {
    json doc;
    doc["gram"] = int_matrix_to(t.lattice.gram);
    doc["char"] = int_vector_to(t.form.coeffs);
    return finish(doc);
}

StructuredQuadratic parse_quad_file(const std::string& text) {
    json doc = parse_document(text);
    TorsionBilinear b = pairing_from(doc);
    std::vector<QmodZ> values = residue_vector(require(doc, "q"), "q");
    std::size_t s = doc.contains("divisible_rank") ? size_from(doc, "divisible_rank") : 0;
    std::vector<Int> w = doc.contains("kernel_hom")
                             ? int_vector(doc["kernel_hom"], "kernel_hom")
                             : std::vector<Int>(s, Int(0));
    return make_quadratic(std::move(b), std::move(values), s, std::move(w));
}

std::string serialize_quad_file(const StructuredQuadratic& q) {
    json doc;
    doc["orders"] = int_vector_to(q.group().orders);
    doc["b"] = residue_matrix_to(q.pairing.matrix);
    doc["q"] = residue_vector_to(q.gen_values);
    doc["divisible_rank"] = int_to(Int(q.divisible_rank));
    doc["kernel_hom"] = int_vector_to(q.kernel_hom);
    return finish(doc);
}

TorsionBilinear parse_pairing_file(const std::string& text) {
    return pairing_from(parse_document(text));
}

std::string serialize_gauss(const CyclotomicNumber& s) { return finish(gauss_to(s)); }

std::string serialize_invariants(const InvariantBundle& inv) {
    json doc;
    doc["orders"] = int_vector_to(inv.orders);
    doc["divisible_rank"] = int_to(Int(inv.divisible_rank));
    doc["pairing"] = residue_matrix_to(inv.pairing);
    json defect;
    defect["torsion"] = residue_vector_to(inv.defect.torsion);
    defect["kernel"] = int_vector_to(inv.defect.kernel);
    doc["defect"] = defect;
    json radical;
    radical["orders"] = int_vector_to(inv.radical.orders);
    radical["generators"] = int_matrix_to(inv.radical.generators);
    radical["values"] = residue_vector_to(inv.radical.values);
    radical["divisible_rank"] = int_to(Int(inv.radical.divisible_rank));
    radical["kernel_hom"] = int_vector_to(inv.radical.kernel_hom);
    doc["radical"] = radical;
    doc["gauss"] = gauss_to(inv.gauss);
    return finish(doc);
}

std::string serialize_decision(const IsoDecision& dec, bool with_witness) {
    json doc;
    doc["isomorphic"] = dec.isomorphic();
    if (!dec.isomorphic())
        doc["reason"] = dec.obstruction;
    else if (with_witness)
        doc["witness"] = witness_to(*dec.witness);
    return finish(doc);
}

std::string serialize_certificate(const StabilizationCertificate& cert) {
    json doc;
    doc["equivalent"] = cert.verdict;
    if (cert.verdict) {
        doc["left_signs"] = int_vector_to(cert.left_signs);
        doc["right_signs"] = int_vector_to(cert.right_signs);
    } else {
        doc["reason"] = cert.reason;
    }
    return finish(doc);
}

std::string serialize_membership(const MembershipResult& m) {
    json doc;
    doc["solvable"] = m.in_image;
    if (m.in_image) doc["char"] = int_vector_to(m.witness->coeffs);
    return finish(doc);
}

std::string serialize_refinements(const std::vector<StructuredQuadratic>& qs) {
    json doc;
    doc["count"] = int_to(Int(qs.size()));
    json list = json::array();
    for (const auto& q : qs) list.push_back(residue_vector_to(q.gen_values));
    doc["refinements"] = list;
    return finish(doc);
}

}  // namespace qtor
