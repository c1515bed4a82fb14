#include "qtor/discriminant.hpp"

#include "qtor/errors.hpp"
#include "qtor/smith.hpp"

namespace qtor {

DiscriminantGroup discriminant_group(const BilinearLattice& f) {
    DiscriminantGroup g;
    g.split = split_nondegenerate(f);
    g.kernel_basis = kernel_of_adjoint(f);
    g.divisible_rank = g.kernel_basis.cols();

    std::size_t r = g.split.fbar.rank();
    SmithResult s = smith_normal_form(g.split.fbar.gram);
    std::vector<std::size_t> kept;
    for (std::size_t i = 0; i < r; ++i)
        if (s.d.at(i, i) >= 2) {
            kept.push_back(i);
            g.orders.push_back(s.d.at(i, i));
        }
    // F^{-1} U^{-1} = V D^{-1}: generator i is column i of V divided by d_i.
    g.gen_reps = RatMat(r, kept.size());
    for (std::size_t j = 0; j < kept.size(); ++j) {
        std::vector<Rational> col(r);
        for (std::size_t i = 0; i < r; ++i)
            col[i] = Rational(s.v.at(i, kept[j])) / Rational(s.d.at(kept[j], kept[j]));
        g.gen_reps.set_column(j, col);
    }
    return g;
}

namespace {

Rational pair_in_fbar(const DiscriminantGroup& g, const std::vector<Rational>& x,
                      const std::vector<Rational>& y) {
    const IntMat& gram = g.split.fbar.gram;
    Rational v = 0;
    for (std::size_t i = 0; i < gram.rows(); ++i)
        for (std::size_t j = 0; j < gram.cols(); ++j)
            v += x[i] * Rational(gram.at(i, j)) * y[j];
    return v;
}

void check_match(const DiscriminantGroup& g, const BilinearLattice& f) {
    if (g.split.section.rows() != f.rank() ||
        g.split.section.transpose() * f.gram * g.split.section != g.split.fbar.gram)
        throw invalid_input("discriminant group does not belong to this lattice");
}

}  // namespace

QMat linking_pairing(const DiscriminantGroup& g, const BilinearLattice& f) {
    check_match(g, f);
    std::size_t k = g.orders.size();
    QMat b(k, k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i; j < k; ++j) {
            QmodZ v(pair_in_fbar(g, g.gen_reps.column(i), g.gen_reps.column(j)));
            b.at(i, j) = v;
            b.at(j, i) = v;
        }
    return b;
}

StructuredQuadratic discriminant_quadratic(const Triple& t) {
    validate_char(t.lattice, t.form);
    DiscriminantGroup g = discriminant_group(t.lattice);
    QMat b = linking_pairing(g, t.lattice);

    CharacteristicForm cbar = retract_char(t.lattice, g.split.section, t.form);
    std::vector<QmodZ> vals;
    for (std::size_t i = 0; i < g.orders.size(); ++i) {
        std::vector<Rational> rep = g.gen_reps.column(i);
        Rational cq = 0;
        for (std::size_t j = 0; j < rep.size(); ++j) cq += Rational(cbar.coeffs[j]) * rep[j];
        vals.push_back(QmodZ((pair_in_fbar(g, rep, rep) - cq) / 2));
    }

    std::vector<Int> w;
    for (std::size_t j = 0; j < g.divisible_rank; ++j) {
        Int cv = 0;
        for (std::size_t i = 0; i < t.lattice.rank(); ++i)
            cv += t.form.coeffs[i] * g.kernel_basis.at(i, j);
        w.push_back(-cv / 2);  // restricted values are always even
    }
    return make_quadratic(make_torsion_bilinear(make_group(g.orders), std::move(b)),
                          std::move(vals), g.divisible_rank, std::move(w));
}

QmodZ evaluate_phi(const Triple& t, const std::vector<Rational>& x) {
    std::size_t n = t.lattice.rank();
    if (x.size() != n) throw invalid_input("element length mismatch");
    Rational fxx = 0, cx = 0;
    for (std::size_t i = 0; i < n; ++i) {
        Rational row = 0;
        for (std::size_t j = 0; j < n; ++j) row += Rational(t.lattice.gram.at(i, j)) * x[j];
        if (denom(row) != 1)
            throw invalid_input("vector does not pair integrally with the lattice");
        fxx += x[i] * row;
        cx += Rational(t.form.coeffs[i]) * x[i];
    }
    return QmodZ((fxx - cx) / 2);
}

}  // namespace qtor
