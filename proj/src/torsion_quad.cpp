#include "qtor/torsion_quad.hpp"

#include <string>
#include <utility>

#include "qtor/errors.hpp"
#include "qtor/smith.hpp"

namespace qtor {

Int FiniteAbelianGroup::total_order() const {
    Int n = 1;
    for (const Int& d : orders) n *= d;
    return n;
}

FiniteAbelianGroup make_group(std::vector<Int> orders) {
    for (const Int& d : orders)
        if (d < 2) throw invalid_input("group orders must be at least 2");
    return FiniteAbelianGroup{std::move(orders)};
}

QMat::QMat(std::initializer_list<std::initializer_list<QmodZ>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) throw invalid_input("ragged matrix literal");
        data_.insert(data_.end(), r.begin(), r.end());
    }
}

bool QMat::is_symmetric() const {
    if (rows_ != cols_) return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = i + 1; j < cols_; ++j)
            if (at(i, j) != at(j, i)) return false;
    return true;
}

QMat QMat::operator+(const QMat& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw invalid_input("matrix shape mismatch");
    QMat r(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = data_[i] + o.data_[i];
    return r;
}

QMat QMat::operator-() const {
    QMat r(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = -data_[i];
    return r;
}

QMat qmul(const IntMat& a, const QMat& b) {
    if (a.cols() != b.rows()) throw invalid_input("matrix shape mismatch");
    QMat r(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) {
            QmodZ s;
            for (std::size_t l = 0; l < b.rows(); ++l) s = s + b.at(l, j) * a.at(i, l);
            r.at(i, j) = s;
        }
    return r;
}

QMat qmul(const QMat& a, const IntMat& b) {
    if (a.cols() != b.rows()) throw invalid_input("matrix shape mismatch");
    QMat r(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) {
            QmodZ s;
            for (std::size_t l = 0; l < a.cols(); ++l) s = s + a.at(i, l) * b.at(l, j);
            r.at(i, j) = s;
        }
    return r;
}

TorsionBilinear make_torsion_bilinear(FiniteAbelianGroup group, QMat matrix) {
    std::size_t k = group.size();
    if (matrix.rows() != k || matrix.cols() != k)
        throw invalid_input("pairing matrix size does not match the group");
    if (!matrix.is_symmetric()) throw invalid_input("pairing matrix must be symmetric");
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            if (!(matrix.at(i, j) * group.orders[i]).is_zero())
                throw invalid_input("pairing entry not annihilated by generator order " +
                                    std::to_string(i));
    return TorsionBilinear{std::move(group), std::move(matrix)};
}

QmodZ pairing_value(const TorsionBilinear& b, const std::vector<Int>& x,
                    const std::vector<Int>& y) {
    std::size_t k = b.group.size();
    if (x.size() != k || y.size() != k) throw invalid_input("element length mismatch");
    QmodZ s;
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) s = s + b.matrix.at(i, j) * (x[i] * y[j]);
    return s;
}

std::vector<Int> reduce_coords(const FiniteAbelianGroup& g, std::vector<Int> x) {
    if (x.size() != g.size()) throw invalid_input("element length mismatch");
    for (std::size_t i = 0; i < x.size(); ++i)
        x[i] -= floor_div(x[i], g.orders[i]) * g.orders[i];
    return x;
}

StructuredQuadratic make_quadratic(TorsionBilinear pairing, std::vector<QmodZ> gen_values,
                                   std::size_t divisible_rank, std::vector<Int> kernel_hom) {
    std::size_t k = pairing.group.size();
    if (gen_values.size() != k) throw invalid_input("generator value count mismatch");
    if (kernel_hom.size() != divisible_rank)
        throw invalid_input("kernel homomorphism length mismatch");
    for (std::size_t i = 0; i < k; ++i) {
        const Int& n = pairing.group.orders[i];
        if (!(gen_values[i] * n + pairing.matrix.at(i, i) * choose2(n)).is_zero())
            throw invalid_input("generator " + std::to_string(i) +
                                " has an inconsistent value: n*q + C(n,2)*b must vanish");
    }
    return StructuredQuadratic{std::move(pairing), std::move(gen_values), divisible_rank,
                               std::move(kernel_hom)};
}

QmodZ evaluate(const StructuredQuadratic& q, const TorsionElement& x) {
    std::size_t k = q.group().size();
    if (x.torsion.size() != k || x.divisible.size() != q.divisible_rank)
        throw invalid_input("element length mismatch");
    QmodZ s;
    for (std::size_t i = 0; i < k; ++i) {
        s = s + q.gen_values[i] * x.torsion[i];
        s = s + q.pairing.matrix.at(i, i) * choose2(x.torsion[i]);
        for (std::size_t j = i + 1; j < k; ++j)
            s = s + q.pairing.matrix.at(i, j) * (x.torsion[i] * x.torsion[j]);
    }
    for (std::size_t l = 0; l < q.divisible_rank; ++l) s = s + x.divisible[l] * q.kernel_hom[l];
    return s;
}

bool HomogeneityDefect::is_zero() const {
    for (const QmodZ& v : torsion)
        if (!v.is_zero()) return false;
    for (const Int& v : kernel)
        if (v != 0) return false;
    return true;
}

HomogeneityDefect homogeneity_defect(const StructuredQuadratic& q) {
    HomogeneityDefect d;
    for (std::size_t i = 0; i < q.group().size(); ++i)
        d.torsion.push_back(q.gen_values[i] + q.gen_values[i] - q.pairing.matrix.at(i, i));
    for (const Int& w : q.kernel_hom) d.kernel.push_back(2 * w);
    return d;
}

RadicalRestriction radical_restriction(const StructuredQuadratic& q) {
    RadicalRestriction out;
    out.divisible_rank = q.divisible_rank;
    out.kernel_hom = q.kernel_hom;
    std::size_t k = q.group().size();
    out.generators = IntMat(k, 0);
    if (k == 0) return out;

    // Solve b(e_i, x) = 0 in Q/Z for all i as integer congruences.
    IntMat a(k, k);
    std::vector<Int> moduli(k), rhs(k, Int(0));
    for (std::size_t i = 0; i < k; ++i) {
        Int d = 1;
        for (std::size_t j = 0; j < k; ++j) d = lcm(d, q.pairing.matrix.at(i, j).denominator());
        for (std::size_t j = 0; j < k; ++j)
            a.at(i, j) = numer(q.pairing.matrix.at(i, j).rep() * Rational(d));
        moduli[i] = d;
    }
    auto sol = solve_congruence_system(a, rhs, moduli);
    IntMat lat = sol->homogeneous;  // full rank: contains diag(orders) Z^k

    // The radical is lat / diag(orders); read its structure from lat^{-1} N.
    IntMat n(k, k);
    for (std::size_t i = 0; i < k; ++i) n.at(i, i) = q.group().orders[i];
    RatMat latinv = rat_inverse(RatMat::from_int(lat));
    IntMat rel(k, k);
    for (std::size_t j = 0; j < k; ++j) {
        std::vector<Rational> col = latinv.mul(to_rational(n.column(j)));
        for (std::size_t i = 0; i < k; ++i) {
            if (denom(col[i]) != 1) throw invalid_input("radical lattice is not integral");
            rel.at(i, j) = numer(col[i]);
        }
    }
    SmithResult s = smith_normal_form(rel);
    IntMat gens = lat * inverse_unimodular(s.u);
    std::vector<std::vector<Int>> cols;
    for (std::size_t i = 0; i < k; ++i) {
        if (s.d.at(i, i) < 2) continue;
        out.orders.push_back(s.d.at(i, i));
        cols.push_back(reduce_coords(q.group(), gens.column(i)));
    }
    out.generators = from_columns(k, cols);
    for (const auto& c : cols)
        out.values.push_back(
            evaluate(q, {c, std::vector<QmodZ>(q.divisible_rank)}));
    return out;
}

StructuredQuadratic act(const std::vector<Int>& alpha, const StructuredQuadratic& q) {
    std::size_t k = q.group().size();
    if (alpha.size() != k) throw invalid_input("element length mismatch");
    StructuredQuadratic r = q;
    for (std::size_t i = 0; i < k; ++i) {
        QmodZ shift;
        for (std::size_t j = 0; j < k; ++j)
            shift = shift + q.pairing.matrix.at(j, i) * alpha[j];
        r.gen_values[i] = r.gen_values[i] + shift;
    }
    return r;
}

GroupIso make_group_iso(FiniteAbelianGroup source, FiniteAbelianGroup target,
                        std::size_t divisible_rank, IntMat matrix, QMat mixing,
                        IntMat kernel_matrix) {
    std::size_t k = source.size(), kt = target.size(), s = divisible_rank;
    if (matrix.rows() != kt || matrix.cols() != k)
        throw invalid_input("iso matrix has the wrong shape");
    if (mixing.rows() != s || mixing.cols() != k)
        throw invalid_input("iso mixing block has the wrong shape");
    if (kernel_matrix.rows() != s || kernel_matrix.cols() != s)
        throw invalid_input("iso kernel block has the wrong shape");

    for (std::size_t i = 0; i < kt; ++i)
        for (std::size_t j = 0; j < k; ++j)
            matrix.at(i, j) -= floor_div(matrix.at(i, j), target.orders[i]) * target.orders[i];

    // Well defined: the order of each source generator annihilates its image.
    for (std::size_t j = 0; j < k; ++j) {
        for (std::size_t i = 0; i < kt; ++i)
            if ((matrix.at(i, j) * source.orders[j]) % target.orders[i] != 0)
                throw invalid_input("iso image of generator " + std::to_string(j) +
                                    " is not annihilated by its order");
        for (std::size_t l = 0; l < s; ++l)
            if (!(mixing.at(l, j) * source.orders[j]).is_zero())
                throw invalid_input("iso mixing image of generator " + std::to_string(j) +
                                    " is not annihilated by its order");
    }

    // Bijective on torsion: equal group orders and surjectivity.
    if (source.total_order() != target.total_order())
        throw invalid_input("iso connects groups of different order");
    IntMat nt(kt, kt);
    for (std::size_t i = 0; i < kt; ++i) nt.at(i, i) = target.orders[i];
    SmithResult s2 = smith_normal_form(hstack(matrix, nt));
    if (s2.rank != kt) throw invalid_input("iso is not surjective on the torsion part");
    for (std::size_t i = 0; i < kt; ++i)
        if (s2.d.at(i, i) != 1) throw invalid_input("iso is not surjective on the torsion part");

    if (s > 0) {
        Int det = kernel_matrix.determinant();
        if (det != 1 && det != -1)
            throw invalid_input("iso kernel block must be invertible over Z");
    }
    return GroupIso{std::move(source),  std::move(target), divisible_rank,
                    std::move(matrix),  std::move(mixing), std::move(kernel_matrix)};
}

GroupIso identity_iso(const FiniteAbelianGroup& g, std::size_t divisible_rank) {
    std::size_t k = g.size();
    return make_group_iso(g, g, divisible_rank, IntMat::identity(k),
                          QMat(divisible_rank, k), IntMat::identity(divisible_rank));
}

GroupIso compose(const GroupIso& outer, const GroupIso& inner) {
    if (inner.target != outer.source || inner.divisible_rank != outer.divisible_rank)
        throw invalid_input("iso composition mismatch");
    IntMat m = outer.matrix * inner.matrix;
    QMat mix = qmul(outer.mixing, inner.matrix) + qmul(outer.kernel_matrix, inner.mixing);
    return make_group_iso(inner.source, outer.target, outer.divisible_rank, std::move(m),
                          std::move(mix), outer.kernel_matrix * inner.kernel_matrix);
}

GroupIso inverse(const GroupIso& psi) {
    std::size_t k = psi.source.size(), kt = psi.target.size(), s = psi.divisible_rank;
    IntMat b(k, kt);
    for (std::size_t j = 0; j < kt; ++j) {
        std::vector<Int> e(kt, Int(0));
        e[j] = 1;
        auto x = solve_congruences(psi.matrix, e, psi.target.orders);
        if (!x) throw invalid_input("iso has no torsion inverse");
        b.set_column(j, *x);
    }
    IntMat kinv = s ? inverse_unimodular(psi.kernel_matrix) : IntMat(0, 0);
    QMat mix = -qmul(kinv, qmul(psi.mixing, b));
    return make_group_iso(psi.target, psi.source, s, std::move(b), std::move(mix),
                          std::move(kinv));
}

TorsionElement apply(const GroupIso& psi, const TorsionElement& x) {
    if (x.torsion.size() != psi.source.size() || x.divisible.size() != psi.divisible_rank)
        throw invalid_input("element length mismatch");
    TorsionElement y;
    y.torsion = reduce_coords(psi.target, psi.matrix.mul(x.torsion));
    for (std::size_t l = 0; l < psi.divisible_rank; ++l) {
        QmodZ v;
        for (std::size_t j = 0; j < x.torsion.size(); ++j)
            v = v + psi.mixing.at(l, j) * x.torsion[j];
        for (std::size_t m = 0; m < psi.divisible_rank; ++m)
            v = v + x.divisible[m] * psi.kernel_matrix.at(l, m);
        y.divisible.push_back(v);
    }
    return y;
}

StructuredQuadratic pullback(const GroupIso& psi, const StructuredQuadratic& q) {
    if (psi.target != q.group() || psi.divisible_rank != q.divisible_rank)
        throw invalid_input("iso target does not match the quadratic function");
    std::size_t k = psi.source.size(), s = psi.divisible_rank;
    QMat pb = qmul(psi.matrix.transpose(), qmul(q.pairing.matrix, psi.matrix));
    std::vector<QmodZ> vals;
    for (std::size_t j = 0; j < k; ++j) {
        std::vector<QmodZ> div(s);
        for (std::size_t l = 0; l < s; ++l) div[l] = psi.mixing.at(l, j);
        vals.push_back(evaluate(q, {psi.matrix.column(j), div}));
    }
    std::vector<Int> w(s, Int(0));
    for (std::size_t l = 0; l < s; ++l)
        for (std::size_t m = 0; m < s; ++m) w[m] += q.kernel_hom[l] * psi.kernel_matrix.at(l, m);
    return make_quadratic(make_torsion_bilinear(psi.source, std::move(pb)), std::move(vals), s,
                          std::move(w));
}

StructuredQuadratic some_quadratic_over(const TorsionBilinear& b) {
    std::vector<QmodZ> vals;
    for (std::size_t i = 0; i < b.group.size(); ++i) {
        const Int& n = b.group.orders[i];
        QmodZ target = -(b.matrix.at(i, i) * choose2(n));
        vals.push_back(QmodZ(target.rep() / Rational(n)));
    }
    return make_quadratic(b, std::move(vals));
}

Normalized normalize(const StructuredQuadratic& q) {
    std::size_t k = q.group().size(), s = q.divisible_rank;
    IntMat n(k, k);
    for (std::size_t i = 0; i < k; ++i) n.at(i, i) = q.group().orders[i];
    SmithResult sn = smith_normal_form(n);
    IntMat uinv = inverse_unimodular(sn.u);

    std::vector<Int> new_orders;
    std::vector<std::size_t> kept;
    for (std::size_t i = 0; i < k; ++i)
        if (sn.d.at(i, i) >= 2) {
            kept.push_back(i);
            new_orders.push_back(sn.d.at(i, i));
        }
    FiniteAbelianGroup ng = make_group(new_orders);
    std::size_t kn = kept.size();

    IntMat fwd(kn, k);  // kept rows of U: the witness matrix
    IntMat back(k, kn);
    for (std::size_t r = 0; r < kn; ++r)
        for (std::size_t j = 0; j < k; ++j) {
            fwd.at(r, j) = sn.u.at(kept[r], j);
            back.at(j, r) = uinv.at(j, kept[r]);
        }

    QMat pb = qmul(back.transpose(), qmul(q.pairing.matrix, back));
    std::vector<QmodZ> vals;
    for (std::size_t r = 0; r < kn; ++r)
        vals.push_back(evaluate(q, {back.column(r), std::vector<QmodZ>(s)}));
    StructuredQuadratic nq = make_quadratic(make_torsion_bilinear(ng, std::move(pb)),
                                            std::move(vals), s, q.kernel_hom);
    GroupIso w = make_group_iso(q.group(), ng, s, std::move(fwd), QMat(s, k),
                                IntMat::identity(s));
    return Normalized{std::move(nq), std::move(w)};
}

StructuredQuadratic orthogonal_sum(const StructuredQuadratic& a, const StructuredQuadratic& b) {
    std::size_t ka = a.group().size(), kb = b.group().size();
    std::vector<Int> orders = a.group().orders;
    orders.insert(orders.end(), b.group().orders.begin(), b.group().orders.end());
    QMat m(ka + kb, ka + kb);
    for (std::size_t i = 0; i < ka; ++i)
        for (std::size_t j = 0; j < ka; ++j) m.at(i, j) = a.pairing.matrix.at(i, j);
    for (std::size_t i = 0; i < kb; ++i)
        for (std::size_t j = 0; j < kb; ++j) m.at(ka + i, ka + j) = b.pairing.matrix.at(i, j);
    std::vector<QmodZ> vals = a.gen_values;
    vals.insert(vals.end(), b.gen_values.begin(), b.gen_values.end());
    std::vector<Int> w = a.kernel_hom;
    w.insert(w.end(), b.kernel_hom.begin(), b.kernel_hom.end());
    return make_quadratic(make_torsion_bilinear(make_group(std::move(orders)), std::move(m)),
                          std::move(vals), a.divisible_rank + b.divisible_rank, std::move(w));
}

}  // namespace qtor
