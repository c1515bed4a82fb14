#include "qtor/classify.hpp"

#include <stdexcept>
#include <utility>

#include "qtor/errors.hpp"
#include "qtor/smith.hpp"

namespace qtor {

namespace {

std::vector<std::vector<Int>> all_elements(const FiniteAbelianGroup& g) {
    std::vector<std::vector<Int>> out{{}};
    for (const Int& n : g.orders) {
        std::vector<std::vector<Int>> next;
        next.reserve(out.size() * to_size(n));
        for (const auto& x : out)
            for (Int c = 0; c < n; ++c) {
                auto y = x;
                y.push_back(c);
                next.push_back(std::move(y));
            }
        out = std::move(next);
    }
    return out;
}

void check_torsion_bound(const StructuredQuadratic& q, const Int& bound) {
    if (q.group().total_order() > bound)
        throw size_limit_error("torsion part exceeds the configured bound");
}

QmodZ torsion_value(const StructuredQuadratic& q, const std::vector<Int>& x) {
    return evaluate(q, {x, std::vector<QmodZ>(q.divisible_rank)});
}

GroupIso torsion_only_iso(const FiniteAbelianGroup& src, const FiniteAbelianGroup& tgt,
                          IntMat a) {
    return make_group_iso(src, tgt, 0, std::move(a), QMat(0, src.size()), IntMat(0, 0));
}

// chi ranges over the characters of the source group reachable as
// w' . (mixing column): exactly g T^* for g the kernel content. An entry
// delta = u/n qualifies iff gcd(g, n) divides u; delta must be killed by
// the generator order at all.
bool in_content_image(const QmodZ& delta, const Int& g, const Int& order) {
    Rational scaled = delta.rep() * Rational(order);
    if (denom(scaled) != 1) return false;
    Int u = numer(scaled);
    Int m = gcd(g, order);
    if (m == 0) return u == 0;
    return u % m == 0;
}

enum class SearchMode { pairing_only, pairing_defect, exact };

// Backtracking search for a torsion isomorphism matching the pairing and,
// depending on the mode, the defect or the value-correction membership.
struct TorsionSearch {
    const StructuredQuadratic& q;
    const StructuredQuadratic& qp;
    SearchMode mode;
    Int g;  // kernel content for exact mode
    std::vector<std::vector<Int>> targets;
    HomogeneityDefect dq, dqp;
    std::vector<std::vector<Int>> chosen;

    TorsionSearch(const StructuredQuadratic& q_, const StructuredQuadratic& qp_,
                  SearchMode mode_, Int g_)
        : q(q_), qp(qp_), mode(mode_), g(std::move(g_)),
          targets(all_elements(qp_.group())),
          dq(homogeneity_defect(q_)),
          dqp(homogeneity_defect(qp_)) {}

    bool candidate_fits(std::size_t i, const std::vector<Int>& a) const {
        // The torsion block of a triangular isomorphism is itself a group
        // isomorphism, so the image of a generator has its exact order.
        const Int& n = q.group().orders[i];
        Int ord = 1;
        for (std::size_t l = 0; l < a.size(); ++l) {
            const Int& m = qp.group().orders[l];
            ord = lcm(ord, m / gcd(m, a[l]));
        }
        if (ord != n) return false;
        if (pairing_value(qp.pairing, a, a) != q.pairing.matrix.at(i, i)) return false;
        for (std::size_t j = 0; j < i; ++j)
            if (pairing_value(qp.pairing, a, chosen[j]) != q.pairing.matrix.at(i, j))
                return false;
        if (mode == SearchMode::pairing_defect) {
            QmodZ da;
            for (std::size_t l = 0; l < a.size(); ++l) da = da + dqp.torsion[l] * a[l];
            if (da != dq.torsion[i]) return false;
        }
        if (mode == SearchMode::exact) {
            QmodZ delta = q.gen_values[i] - torsion_value(qp, a);
            if (!in_content_image(delta, g, n)) return false;
        }
        return true;
    }

    std::optional<IntMat> extend(std::size_t i) {
        if (i == q.group().size()) {
            IntMat a = from_columns(qp.group().size(), chosen);
            try {
                torsion_only_iso(q.group(), qp.group(), a);
            } catch (const invalid_input&) {
                return std::nullopt;
            }
            return a;
        }
        for (const auto& cand : targets) {
            if (!candidate_fits(i, cand)) continue;
            chosen.push_back(cand);
            if (auto found = extend(i + 1)) return found;
            chosen.pop_back();
        }
        return std::nullopt;
    }

    std::optional<IntMat> run() { return extend(0); }
};

std::optional<IntMat> search_torsion_iso(const StructuredQuadratic& q,
                                         const StructuredQuadratic& qp, SearchMode mode,
                                         const Int& g = 0) {
    if (q.group().total_order() != qp.group().total_order()) return std::nullopt;
    return TorsionSearch(q, qp, mode, g).run();
}

IntMat column_matrix(const std::vector<Int>& v) {
    IntMat m(v.size(), 1);
    for (std::size_t i = 0; i < v.size(); ++i) m.at(i, 0) = v[i];
    return m;
}

// Kernel block K with K^T w' = w, valid whenever content(w) == content(w').
IntMat kernel_block(const std::vector<Int>& w, const std::vector<Int>& wp) {
    std::size_t s = w.size();
    if (content(w) == 0) return IntMat::identity(s);
    SmithResult sw = smith_normal_form(column_matrix(w));
    SmithResult swp = smith_normal_form(column_matrix(wp));
    IntMat sign = IntMat::identity(s);
    sign.at(0, 0) = sw.v.at(0, 0) * swp.v.at(0, 0);
    IntMat kt = inverse_unimodular(sw.u) * sign * swp.u;
    return kt.transpose();
}

// Mixing block with w' . (column j) = delta_j, for deltas in the content
// image g T^*.
QMat mixing_block(const StructuredQuadratic& q, const StructuredQuadratic& qp,
                  const std::vector<QmodZ>& delta) {
    std::size_t s = qp.kernel_hom.size(), k = delta.size();
    QMat mu(s, k);
    Int g = content(qp.kernel_hom);
    if (g == 0) return mu;
    IntMat row(1, s);
    for (std::size_t l = 0; l < s; ++l) row.at(0, l) = qp.kernel_hom[l];
    auto bez = solve_linear(row, {g});
    if (!bez) throw std::logic_error("content is always attained");
    for (std::size_t j = 0; j < k; ++j) {
        const Int& n = q.group().orders[j];
        Int u = numer(delta[j].rep() * Rational(n));
        auto t = solve_congruences(IntMat{{g}}, {u}, {n});
        if (!t) throw std::logic_error("membership was already checked");
        for (std::size_t l = 0; l < s; ++l) mu.at(l, j) = QmodZ(bez->particular[l] * (*t)[0], n);
    }
    return mu;
}

GroupIso verified(GroupIso psi, const StructuredQuadratic& q, const StructuredQuadratic& qp) {
    if (pullback(psi, qp) != q)
        throw std::logic_error("isomorphism witness failed verification");
    return psi;
}

// lcm of the denominators appearing in column j of the pairing plus extras.
Int lcm_denominators(const StructuredQuadratic& q, std::size_t i, const QmodZ& rhs) {
    Int d = rhs.denominator();
    for (std::size_t j = 0; j < q.group().size(); ++j)
        d = lcm(d, q.pairing.matrix.at(j, i).denominator());
    return d;
}

// Solve b(alpha, -) = chi on a nondegenerate pairing.
std::vector<Int> adjoint_preimage(const StructuredQuadratic& q, const std::vector<QmodZ>& chi) {
    std::size_t k = q.group().size();
    IntMat a(k, k);
    std::vector<Int> rhs(k), moduli(k);
    for (std::size_t i = 0; i < k; ++i) {
        Int d = lcm_denominators(q, i, chi[i]);
        for (std::size_t j = 0; j < k; ++j)
            a.at(i, j) = numer(q.pairing.matrix.at(j, i).rep() * Rational(d));
        rhs[i] = numer(chi[i].rep() * Rational(d));
        moduli[i] = d;
    }
    auto alpha = solve_congruences(a, rhs, moduli);
    if (!alpha) throw std::logic_error("character is not in the image of the adjoint");
    return reduce_coords(q.group(), *alpha);
}

}  // namespace

CyclotomicNumber gauss_sum(const StructuredQuadratic& q, const ClassifyOptions& opts) {
    check_torsion_bound(q, opts.max_eval_order);
    std::vector<QmodZ> values;
    Int level = 1;
    for (const auto& x : all_elements(q.group())) {
        values.push_back(torsion_value(q, x));
        level = lcm(level, values.back().denominator());
    }
    CyclotomicNumber s;
    s.level = to_size(level);
    s.coeffs.assign(s.level, Int(0));
    for (const QmodZ& v : values)
        s.coeffs[to_size(numer(v.rep() * Rational(level)))] += 1;
    s.norm_square = q.group().total_order();
    return s;
}

GroupIso fundamental_automorphism(const StructuredQuadratic& q, const std::vector<Int>& alpha) {
    std::size_t k = q.group().size(), s = q.divisible_rank;
    if (alpha.size() != k) throw invalid_input("element length mismatch");
    for (std::size_t i = 0; i < k; ++i)
        if ((2 * alpha[i]) % q.group().orders[i] != 0)
            throw invalid_input("element is not 2-torsion");
    if (!torsion_value(q, alpha).is_zero())
        throw invalid_input("quadratic function does not vanish at the element");

    IntMat m = IntMat::identity(k);
    for (std::size_t j = 0; j < k; ++j) {
        std::vector<Int> e(k, Int(0));
        e[j] = 1;
        QmodZ beta = pairing_value(q.pairing, alpha, e);
        if (beta.is_zero()) continue;
        for (std::size_t i = 0; i < k; ++i) m.at(i, j) += alpha[i];
    }
    GroupIso sigma =
        make_group_iso(q.group(), q.group(), s, std::move(m), QMat(s, k), IntMat::identity(s));
    if (compose(sigma, sigma) != identity_iso(q.group(), s) ||
        pullback(sigma, q) != act(alpha, q))
        throw std::logic_error("fundamental involution failed verification");
    return sigma;
}

IsoDecision decide_isomorphic(const StructuredQuadratic& q, const StructuredQuadratic& qp,
                              const ClassifyOptions& opts) {
    if (q == qp) return {identity_iso(q.group(), q.divisible_rank), ""};
    if (q.divisible_rank != qp.divisible_rank) return {std::nullopt, "group"};
    if (normalize(q).q.group() != normalize(qp).q.group()) return {std::nullopt, "group"};
    check_torsion_bound(q, opts.max_search_order);
    check_torsion_bound(qp, opts.max_search_order);

    Int g = content(q.kernel_hom);
    if (g != content(qp.kernel_hom)) return {std::nullopt, "radical"};
    RadicalRestriction rq = radical_restriction(q), rqp = radical_restriction(qp);
    if (rq.orders != rqp.orders) return {std::nullopt, "radical"};

    std::size_t k = q.group().size(), s = q.divisible_rank;
    bool nondegenerate = rq.orders.empty() && s == 0;

    if (nondegenerate) {
        if (!cyclotomic_equal(gauss_sum(q, opts), gauss_sum(qp, opts)))
            return {std::nullopt, "gauss"};
        auto a = search_torsion_iso(q, qp, SearchMode::pairing_defect);
        if (!a) {
            if (search_torsion_iso(q, qp, SearchMode::pairing_only))
                return {std::nullopt, "defect"};
            return {std::nullopt, "pairing"};
        }
        GroupIso psi_a = torsion_only_iso(q.group(), qp.group(), *a);
        StructuredQuadratic p = pullback(psi_a, qp);
        std::vector<QmodZ> chi(k);
        bool residual = false;
        for (std::size_t i = 0; i < k; ++i) {
            chi[i] = q.gen_values[i] - p.gen_values[i];
            residual = residual || !chi[i].is_zero();
        }
        if (!residual) return {verified(std::move(psi_a), q, qp), ""};
        GroupIso sigma = fundamental_automorphism(p, adjoint_preimage(p, chi));
        return {verified(compose(psi_a, sigma), q, qp), ""};
    }

    auto a = search_torsion_iso(q, qp, SearchMode::exact, g);
    if (!a) {
        if (search_torsion_iso(q, qp, SearchMode::pairing_only))
            return {std::nullopt, "values"};
        return {std::nullopt, "pairing"};
    }
    std::vector<QmodZ> delta(k);
    for (std::size_t j = 0; j < k; ++j)
        delta[j] = q.gen_values[j] - torsion_value(qp, a->column(j));
    GroupIso psi = make_group_iso(q.group(), qp.group(), s, *a, mixing_block(q, qp, delta),
                                  kernel_block(q.kernel_hom, qp.kernel_hom));
    return {verified(std::move(psi), q, qp), ""};
}

std::optional<GroupIso> is_isomorphic(const StructuredQuadratic& q,
                                      const StructuredQuadratic& qp,
                                      const ClassifyOptions& opts) {
    return decide_isomorphic(q, qp, opts).witness;
}

std::optional<GroupIso> brute_force_isomorphic(const StructuredQuadratic& q,
                                               const StructuredQuadratic& qp) {
    if (q.divisible_rank != qp.divisible_rank) return std::nullopt;
    Int g = content(q.kernel_hom);
    if (g != content(qp.kernel_hom)) return std::nullopt;
    if (q.group().total_order() != qp.group().total_order()) return std::nullopt;

    std::size_t k = q.group().size(), kt = qp.group().size(), s = q.divisible_rank;
    auto sources = all_elements(q.group());
    auto targets = all_elements(qp.group());

    // value tables; targets are ordered by mixed radix, last coordinate fastest
    std::vector<QmodZ> vq, vqp;
    for (const auto& x : sources) vq.push_back(torsion_value(q, x));
    for (const auto& y : targets) vqp.push_back(torsion_value(qp, y));
    std::vector<Int> stride(kt, Int(1));
    for (std::size_t l = kt; l-- > 1;) stride[l - 1] = stride[l] * qp.group().orders[l];
    auto target_index = [&](const std::vector<Int>& y) {
        Int idx = 0;
        for (std::size_t l = 0; l < kt; ++l) idx += y[l] * stride[l];
        return to_size(idx);
    };

    std::vector<std::size_t> pick(k, 0);
    for (;;) {
        bool ok = true;
        std::vector<QmodZ> delta(k);
        for (std::size_t i = 0; i < k && ok; ++i) {
            const auto& col = targets[pick[i]];
            for (std::size_t l = 0; l < kt && ok; ++l)
                if ((q.group().orders[i] * col[l]) % qp.group().orders[l] != 0) ok = false;
            if (!ok) break;
            delta[i] = q.gen_values[i] - vqp[pick[i]];
            ok = in_content_image(delta[i], g, q.group().orders[i]);
        }
        if (ok) {
            IntMat a(kt, k);
            for (std::size_t i = 0; i < k; ++i) a.set_column(i, targets[pick[i]]);
            // The correction must act as a character: check every point.
            for (std::size_t xi = 0; xi < sources.size() && ok; ++xi) {
                QmodZ lin;
                for (std::size_t i = 0; i < k; ++i) lin = lin + delta[i] * sources[xi][i];
                ok = vq[xi] - vqp[target_index(reduce_coords(qp.group(), a.mul(sources[xi])))] ==
                     lin;
            }
            if (ok) {
                try {
                    GroupIso psi =
                        make_group_iso(q.group(), qp.group(), s, a, mixing_block(q, qp, delta),
                                       kernel_block(q.kernel_hom, qp.kernel_hom));
                    if (pullback(psi, qp) != q)
                        throw std::logic_error("oracle witness failed verification");
                    return psi;
                } catch (const invalid_input&) {
                    // not invertible; keep searching
                }
            }
        }
        std::size_t i = 0;
        while (i < k && ++pick[i] == targets.size()) pick[i++] = 0;
        if (i == k) break;
    }
    return std::nullopt;
}

std::vector<StructuredQuadratic> enumerate_refinements(const TorsionBilinear& b,
                                                       const ClassifyOptions& opts) {
    if (b.group.total_order() > opts.max_search_order)
        throw size_limit_error("group exceeds the refinement enumeration bound");
    StructuredQuadratic q0 = some_quadratic_over(b);
    std::vector<StructuredQuadratic> out;
    for (const auto& t : all_elements(b.group)) {
        StructuredQuadratic q = q0;
        for (std::size_t i = 0; i < t.size(); ++i)
            q.gen_values[i] = q.gen_values[i] + QmodZ(t[i], b.group.orders[i]);
        out.push_back(std::move(q));
    }
    return out;
}

InvariantBundle invariants(const StructuredQuadratic& q, const ClassifyOptions& opts) {
    Normalized n = normalize(q);
    InvariantBundle b;
    b.orders = n.q.group().orders;
    b.divisible_rank = n.q.divisible_rank;
    b.pairing = n.q.pairing.matrix;
    b.defect = homogeneity_defect(n.q);
    b.radical = radical_restriction(n.q);
    b.gauss = gauss_sum(n.q, opts);
    return b;
}

}  // namespace qtor
