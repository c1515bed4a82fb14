#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "qtor/discriminant.hpp"
#include "qtor/errors.hpp"
#include "qtor/io.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw qtor::invalid_input("cannot read file " + path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact computations with quadratic functions on torsion groups"};
    app.require_subcommand(1);

    long long max_group_order = 512;
    std::string format = "json";
    app.add_option("--max-group-order", max_group_order,
                   "largest group order accepted by searches and enumeration")
        ->check(CLI::PositiveNumber);
    app.add_option("--format", format, "output format")->check(CLI::IsMember({"json"}));

    std::string d_lat, g_quad, i_quad, c_a, c_b, s_a, s_b, e_lat, e_quad, r_pairing;
    bool with_witness = false;

    auto* disc = app.add_subcommand("discriminant", "quadratic function induced by a lattice");
    disc->add_option("lattice", d_lat, "lattice file")->required();

    auto* gauss = app.add_subcommand("gauss", "Gauss sum of a quadratic function");
    gauss->add_option("quad", g_quad, "quadratic function file")->required();

    auto* inv = app.add_subcommand("invariants", "classifying invariants in normalized form");
    inv->add_option("quad", i_quad, "quadratic function file")->required();

    auto* iso = app.add_subcommand("isomorphic", "decide isomorphism of quadratic functions");
    iso->add_option("a", c_a, "quadratic function file")->required();
    iso->add_option("b", c_b, "quadratic function file")->required();
    iso->add_flag("--witness", with_witness, "emit the isomorphism when one exists");

    auto* stab = app.add_subcommand("stable-equivalent",
                                    "decide stable equivalence of characteristic lattices");
    stab->add_option("a", s_a, "lattice file")->required();
    stab->add_option("b", s_b, "lattice file")->required();

    auto* solve = app.add_subcommand(
        "solve-char", "characteristic form on a lattice inducing a quadratic function");
    solve->add_option("lattice", e_lat, "lattice file")->required();
    solve->add_option("quad", e_quad, "quadratic function file")->required();

    auto* refs = app.add_subcommand("refinements", "all quadratic refinements of a pairing");
    refs->add_option("pairing", r_pairing, "pairing file (orders and b)")->required();

    for (auto* sub : app.get_subcommands({})) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    qtor::ClassifyOptions opts;
    opts.max_search_order = max_group_order;
    opts.max_eval_order = std::max<long long>(max_group_order, 10000);

    try {
        std::string out;
        if (*disc) {
            out = qtor::serialize_quad_file(
                qtor::discriminant_quadratic(qtor::parse_lattice_file(read_file(d_lat))));
        } else if (*gauss) {
            out = qtor::serialize_gauss(
                qtor::gauss_sum(qtor::parse_quad_file(read_file(g_quad)), opts));
        } else if (*inv) {
            out = qtor::serialize_invariants(
                qtor::invariants(qtor::parse_quad_file(read_file(i_quad)), opts));
        } else if (*iso) {
            qtor::StructuredQuadratic qa = qtor::parse_quad_file(read_file(c_a));
            qtor::StructuredQuadratic qb = qtor::parse_quad_file(read_file(c_b));
            out = qtor::serialize_decision(qtor::decide_isomorphic(qa, qb, opts), with_witness);
        } else if (*stab) {
            qtor::Triple a = qtor::parse_lattice_file(read_file(s_a));
            qtor::Triple b = qtor::parse_lattice_file(read_file(s_b));
            out = qtor::serialize_certificate(qtor::stably_equivalent(a, b, opts));
        } else if (*solve) {
            qtor::Triple t = qtor::parse_lattice_file(read_file(e_lat));
            qtor::StructuredQuadratic q = qtor::parse_quad_file(read_file(e_quad));
            out = qtor::serialize_membership(qtor::image_membership(t.lattice, q));
        } else if (*refs) {
            out = qtor::serialize_refinements(
                qtor::enumerate_refinements(qtor::parse_pairing_file(read_file(r_pairing)), opts));
        }
        std::cout << out;
        return 0;
    } catch (const qtor::size_limit_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const qtor::invalid_input& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
