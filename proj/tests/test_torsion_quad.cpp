#include <random>
#include <vector>

#include "doctest.h"
#include "qtor/errors.hpp"
#include "qtor/torsion_quad.hpp"

using namespace qtor;

namespace {

QmodZ qz(long long n, long long d) { return QmodZ(Int(n), Int(d)); }

StructuredQuadratic mk(std::vector<Int> orders, QMat b, std::vector<QmodZ> vals,
                       std::size_t s = 0, std::vector<Int> w = {}) {
    return make_quadratic(make_torsion_bilinear(make_group(std::move(orders)), std::move(b)),
                          std::move(vals), s, std::move(w));
}

// All elements of the torsion part, coordinates in [0, n_i).
std::vector<std::vector<Int>> all_elements(const FiniteAbelianGroup& g) {
    std::vector<std::vector<Int>> out{{}};
    for (const Int& n : g.orders) {
        std::vector<std::vector<Int>> next;
        for (const auto& x : out)
            for (Int c = 0; c < n; ++c) {
                auto y = x;
                y.push_back(c);
                next.push_back(y);
            }
        out = next;
    }
    return out;
}

TorsionElement elem(std::vector<Int> t, std::vector<QmodZ> d = {}) {
    return TorsionElement{std::move(t), std::move(d)};
}

std::vector<Int> vadd(const std::vector<Int>& a, const std::vector<Int>& b) {
    std::vector<Int> r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

StructuredQuadratic random_quadratic(std::mt19937_64& rng, std::size_t max_rank = 3,
                                     std::size_t max_s = 2) {
    std::uniform_int_distribution<int> ord(0, 3);
    std::uniform_int_distribution<int> coin(0, 11);
    const Int choices[] = {2, 3, 4, 6};
    std::size_t k = std::uniform_int_distribution<std::size_t>(0, max_rank)(rng);
    std::vector<Int> orders;
    for (std::size_t i = 0; i < k; ++i) orders.push_back(choices[ord(rng)]);
    QMat b(k, k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i; j < k; ++j) {
            Int g = gcd(orders[i], orders[j]);
            QmodZ v(Int(coin(rng)), g);
            b.at(i, j) = v;
            b.at(j, i) = v;
        }
    TorsionBilinear tb = make_torsion_bilinear(make_group(orders), b);
    StructuredQuadratic q0 = some_quadratic_over(tb);
    for (std::size_t i = 0; i < k; ++i)
        q0.gen_values[i] = q0.gen_values[i] + QmodZ(Int(coin(rng)), orders[i]);
    std::size_t s = std::uniform_int_distribution<std::size_t>(0, max_s)(rng);
    std::vector<Int> w;
    for (std::size_t l = 0; l < s; ++l) w.push_back(coin(rng) - 5);
    return make_quadratic(q0.pairing, q0.gen_values, s, w);
}

QmodZ defect_at(const HomogeneityDefect& d, const TorsionElement& x) {
    QmodZ v;
    for (std::size_t i = 0; i < d.torsion.size(); ++i) v = v + d.torsion[i] * x.torsion[i];
    for (std::size_t l = 0; l < d.kernel.size(); ++l) v = v + x.divisible[l] * d.kernel[l];
    return v;
}

}  // namespace

TEST_CASE("constructors validate structured data") {
    CHECK_THROWS_AS(make_group({Int(1)}), invalid_input);
    CHECK_THROWS_AS(make_group({Int(0)}), invalid_input);

    // Pairing entry of order not dividing the generator order.
    CHECK_THROWS_AS(make_torsion_bilinear(make_group({Int(2)}), QMat{{qz(1, 3)}}),
                    invalid_input);
    CHECK_THROWS_AS(
        make_torsion_bilinear(make_group({Int(2), Int(2)}),
                              QMat{{qz(0, 1), qz(1, 2)}, {qz(0, 1), qz(0, 1)}}),
        invalid_input);

    // Inconsistent generator value: on Z/2 with b = 1/2 we need 2q + b = 0.
    CHECK_THROWS_AS(mk({Int(2)}, QMat{{qz(1, 2)}}, {qz(0, 1)}), invalid_input);
    CHECK_NOTHROW(mk({Int(2)}, QMat{{qz(1, 2)}}, {qz(1, 4)}));
    CHECK_NOTHROW(mk({Int(2)}, QMat{{qz(1, 2)}}, {qz(3, 4)}));
    CHECK_THROWS_AS(mk({Int(2)}, QMat{{qz(0, 1)}}, {qz(1, 4)}), invalid_input);

    // Kernel data length must match the divisible rank.
    CHECK_THROWS_AS(mk({}, QMat(0, 0), {}, 2, {Int(1)}), invalid_input);
}

TEST_CASE("evaluation of structured quadratic functions") {
    StructuredQuadratic q8 = mk({Int(4)}, QMat{{qz(1, 4)}}, {qz(1, 8)});
    CHECK(evaluate(q8, elem({Int(2)})) == qz(1, 2));
    CHECK(evaluate(q8, elem({Int(0)})) == qz(0, 1));
    // x^2/8 at x = 0..3, also at unreduced representatives.
    for (long long x = 0; x < 12; ++x)
        CHECK(evaluate(q8, elem({Int(x)})) == qz(x * x, 8));

    StructuredQuadratic hyp = mk({Int(2), Int(2)},
                                 QMat{{qz(0, 1), qz(1, 2)}, {qz(1, 2), qz(0, 1)}},
                                 {qz(0, 1), qz(0, 1)});
    CHECK(evaluate(hyp, elem({Int(1), Int(1)})) == qz(1, 2));
    CHECK(evaluate(hyp, elem({Int(1), Int(0)})) == qz(0, 1));

    // Divisible part contributes w . v.
    StructuredQuadratic qk = mk({}, QMat(0, 0), {}, 2, {Int(-1), Int(3)});
    CHECK(evaluate(qk, elem({}, {qz(1, 4), qz(1, 6)})) == qz(1, 4));  // -1/4 + 3/6
    CHECK_THROWS_AS(evaluate(qk, elem({}, {qz(1, 4)})), invalid_input);
}

TEST_CASE("polarization, conjugation and well-definedness") {
    std::mt19937_64 rng(424242);
    for (int t = 0; t < 40; ++t) {
        StructuredQuadratic q = random_quadratic(rng, 2, 1);
        auto elems = all_elements(q.group());
        std::vector<QmodZ> dcoords(q.divisible_rank, qz(1, 3));
        std::vector<QmodZ> dsum(dcoords.size());
        for (std::size_t l = 0; l < dcoords.size(); ++l) dsum[l] = dcoords[l] + dcoords[l];
        for (const auto& x : elems)
            for (const auto& y : elems) {
                QmodZ lhs = evaluate(q, elem(vadd(x, y), dsum)) -
                            evaluate(q, elem(x, dcoords)) - evaluate(q, elem(y, dcoords));
                CHECK(lhs == pairing_value(q.pairing, x, y));
            }
        // q(-x) = b(x,x) - q(x) on pure torsion elements.
        std::vector<QmodZ> zero(q.divisible_rank);
        for (const auto& x : elems) {
            std::vector<Int> neg(x.size());
            for (std::size_t i = 0; i < x.size(); ++i) neg[i] = -x[i];
            CHECK(evaluate(q, elem(neg, zero)) ==
                  pairing_value(q.pairing, x, x) - evaluate(q, elem(x, zero)));
        }
        // Shifting any coordinate by its order leaves values unchanged.
        for (const auto& x : elems)
            for (std::size_t i = 0; i < x.size(); ++i) {
                auto shifted = x;
                shifted[i] += q.group().orders[i];
                CHECK(evaluate(q, elem(shifted, zero)) == evaluate(q, elem(x, zero)));
            }
    }
}

TEST_CASE("homogeneity defect") {
    StructuredQuadratic homog = mk({Int(4)}, QMat{{qz(1, 4)}}, {qz(1, 8)});
    CHECK(homogeneity_defect(homog).is_zero());

    StructuredQuadratic q = mk({Int(4)}, QMat{{qz(1, 4)}}, {qz(7, 8)});
    HomogeneityDefect d = homogeneity_defect(q);
    CHECK(d.torsion == std::vector<QmodZ>{qz(1, 2)});
    CHECK_FALSE(d.is_zero());

    // d(x) = q(x) - q(-x) and n^2 q(x) - q(nx) = C(n,2) d(x).
    std::mt19937_64 rng(7);
    for (int t = 0; t < 40; ++t) {
        StructuredQuadratic r = random_quadratic(rng, 2, 1);
        HomogeneityDefect rd = homogeneity_defect(r);
        std::vector<QmodZ> dc(r.divisible_rank, qz(1, 5));
        for (const auto& x : all_elements(r.group())) {
            TorsionElement xe = elem(x, dc);
            std::vector<Int> neg(x.size());
            for (std::size_t i = 0; i < x.size(); ++i) neg[i] = -x[i];
            std::vector<QmodZ> negd(dc.size());
            for (std::size_t l = 0; l < dc.size(); ++l) negd[l] = -dc[l];
            CHECK(defect_at(rd, xe) == evaluate(r, xe) - evaluate(r, elem(neg, negd)));
            Int expo = 1;
            for (const Int& n : r.group().orders) expo = lcm(expo, n);
            for (Int n = 0; n <= 2 * expo; ++n) {
                std::vector<Int> nx(x.size());
                for (std::size_t i = 0; i < x.size(); ++i) nx[i] = n * x[i];
                std::vector<QmodZ> nd(dc.size());
                for (std::size_t l = 0; l < dc.size(); ++l) nd[l] = dc[l] * n;
                CHECK(evaluate(r, xe) * (n * n) - evaluate(r, elem(nx, nd)) ==
                      defect_at(rd, xe) * choose2(n));
            }
        }
    }
}

TEST_CASE("radical restriction") {
    // Nondegenerate on Z/2: trivial radical.
    RadicalRestriction r1 = radical_restriction(mk({Int(2)}, QMat{{qz(1, 2)}}, {qz(1, 4)}));
    CHECK(r1.orders.empty());
    CHECK(r1.values.empty());
    CHECK(r1.divisible_rank == 0);

    // Pure divisible part with zero homomorphism.
    RadicalRestriction r2 = radical_restriction(mk({}, QMat(0, 0), {}, 1, {Int(0)}));
    CHECK(r2.orders.empty());
    CHECK(r2.divisible_rank == 1);
    CHECK(r2.kernel_hom == std::vector<Int>{0});

    // Nondegenerate torsion plus divisible part: radical is the divisible part.
    RadicalRestriction r3 =
        radical_restriction(mk({Int(2)}, QMat{{qz(1, 2)}}, {qz(1, 4)}, 1, {Int(-1)}));
    CHECK(r3.orders.empty());
    CHECK(r3.divisible_rank == 1);
    CHECK(r3.kernel_hom == std::vector<Int>{-1});

    // Totally degenerate: the radical is everything.
    RadicalRestriction r4 = radical_restriction(mk({Int(2)}, QMat{{qz(0, 1)}}, {qz(1, 2)}));
    CHECK(r4.orders == std::vector<Int>{2});
    CHECK(r4.values == std::vector<QmodZ>{qz(1, 2)});

    // Rank-one radical inside Z/2 x Z/4 with pairing x1 y2/2 + x2 y1/2.
    StructuredQuadratic q =
        mk({Int(2), Int(4)}, QMat{{qz(0, 1), qz(1, 2)}, {qz(1, 2), qz(0, 1)}},
           {qz(0, 1), qz(0, 1)});
    RadicalRestriction r5 = radical_restriction(q);
    CHECK(r5.orders == std::vector<Int>{2});
    REQUIRE(r5.generators.cols() == 1);
    // The radical is generated by 2 e2.
    CHECK(r5.generators.column(0) == std::vector<Int>{0, 2});
    CHECK(r5.values == std::vector<QmodZ>{qz(0, 1)});

    // Oracle sweep: the reported radical matches brute-force enumeration.
    std::mt19937_64 rng(99);
    for (int t = 0; t < 60; ++t) {
        StructuredQuadratic rq = random_quadratic(rng, 2, 0);
        auto elems = all_elements(rq.group());
        std::size_t rad_size = 0;
        for (const auto& x : elems) {
            bool in_rad = true;
            for (const auto& y : elems)
                if (!pairing_value(rq.pairing, x, y).is_zero()) {
                    in_rad = false;
                    break;
                }
            rad_size += in_rad;
        }
        RadicalRestriction rr = radical_restriction(rq);
        Int reported = 1;
        for (const Int& d : rr.orders) reported *= d;
        CHECK(reported == Int(rad_size));
        // Invariant-factor shape and generator orders.
        for (std::size_t i = 0; i + 1 < rr.orders.size(); ++i)
            CHECK(rr.orders[i + 1] % rr.orders[i] == 0);
        // Restriction is additive: values are consistent homomorphism data.
        for (std::size_t i = 0; i < rr.orders.size(); ++i)
            CHECK((rr.values[i] * rr.orders[i]).is_zero());
    }
}

TEST_CASE("action of the group on its quadratic refinements") {
    StructuredQuadratic q = mk({Int(2)}, QMat{{qz(1, 2)}}, {qz(1, 4)});
    StructuredQuadratic shifted = act({Int(1)}, q);
    CHECK(shifted.gen_values == std::vector<QmodZ>{qz(3, 4)});
    CHECK(act({Int(0)}, q) == q);

    // (alpha . q)(x) = q(x) + b(alpha, x) pointwise.
    std::mt19937_64 rng(1234);
    for (int t = 0; t < 40; ++t) {
        StructuredQuadratic r = random_quadratic(rng, 3, 0);
        auto elems = all_elements(r.group());
        if (elems.empty()) continue;
        const auto& alpha = elems[t % elems.size()];
        StructuredQuadratic ra = act(alpha, r);
        CHECK(ra.pairing == r.pairing);
        for (const auto& x : elems)
            CHECK(evaluate(ra, elem(x)) ==
                  evaluate(r, elem(x)) + pairing_value(r.pairing, alpha, x));
    }
}

TEST_CASE("group isomorphisms") {
    FiniteAbelianGroup g23 = make_group({Int(2), Int(3)});
    FiniteAbelianGroup g6 = make_group({Int(6)});

    SUBCASE("validation") {
        // 1 has order 6 in Z/6 but e1 has order 2: not well defined.
        CHECK_THROWS_AS(
            make_group_iso(g23, g6, 0, IntMat{{1, 4}}, QMat(0, 2), IntMat(0, 0)),
            invalid_input);
        // Doubling map on Z/2 is zero: not surjective.
        FiniteAbelianGroup g2 = make_group({Int(2)});
        CHECK_THROWS_AS(make_group_iso(g2, g2, 0, IntMat{{2}}, QMat(0, 1), IntMat(0, 0)),
                        invalid_input);
        // Group order mismatch.
        CHECK_THROWS_AS(make_group_iso(g2, g6, 0, IntMat{{3}}, QMat(0, 1), IntMat(0, 0)),
                        invalid_input);
        // Kernel block must be unimodular.
        CHECK_THROWS_AS(make_group_iso(g2, g2, 1, IntMat{{1}}, QMat(1, 1), IntMat{{2}}),
                        invalid_input);
        CHECK_NOTHROW(make_group_iso(g2, g2, 1, IntMat{{1}}, QMat(1, 1), IntMat{{-1}}));
        // Mixing must be annihilated by the generator order.
        CHECK_THROWS_AS(
            make_group_iso(g2, g2, 1, IntMat{{1}}, QMat{{qz(1, 3)}}, IntMat{{1}}),
            invalid_input);
        CHECK_NOTHROW(
            make_group_iso(g2, g2, 1, IntMat{{1}}, QMat{{qz(1, 2)}}, IntMat{{1}}));
    }

    SUBCASE("chinese remainder iso and inverse") {
        GroupIso crt = make_group_iso(g23, g6, 0, IntMat{{3, 4}}, QMat(0, 2), IntMat(0, 0));
        TorsionElement img = apply(crt, elem({Int(1), Int(1)}));
        CHECK(img.torsion == std::vector<Int>{1});
        GroupIso inv = inverse(crt);
        CHECK(compose(inv, crt) == identity_iso(g23));
        CHECK(compose(crt, inv) == identity_iso(g6));
        for (const auto& x : all_elements(g23))
            CHECK(apply(inv, apply(crt, elem(x))).torsion == x);
    }

    SUBCASE("inverse with mixing and kernel blocks") {
        FiniteAbelianGroup g4 = make_group({Int(4)});
        GroupIso psi = make_group_iso(g4, g4, 2, IntMat{{3}},
                                      QMat{{qz(1, 4)}, {qz(1, 2)}}, IntMat{{1, 1}, {0, 1}});
        GroupIso inv = inverse(psi);
        CHECK(compose(inv, psi) == identity_iso(g4, 2));
        CHECK(compose(psi, inv) == identity_iso(g4, 2));
        TorsionElement x = elem({Int(3)}, {qz(1, 8), qz(5, 6)});
        TorsionElement y = apply(psi, x);
        CHECK(apply(inv, y) == elem({Int(3)}, {qz(1, 8), qz(5, 6)}));
    }
}

TEST_CASE("pullback of quadratic functions") {
    StructuredQuadratic hyp = mk({Int(2), Int(2)},
                                 QMat{{qz(0, 1), qz(1, 2)}, {qz(1, 2), qz(0, 1)}},
                                 {qz(0, 1), qz(0, 1)});
    GroupIso id = identity_iso(hyp.group());
    CHECK(pullback(id, hyp) == hyp);

    GroupIso swap = make_group_iso(hyp.group(), hyp.group(), 0, IntMat{{0, 1}, {1, 0}},
                                   QMat(0, 2), IntMat(0, 0));
    CHECK(pullback(swap, hyp) == hyp);

    // Negation pulls back to the conjugate function.
    std::mt19937_64 rng(5050);
    for (int t = 0; t < 30; ++t) {
        StructuredQuadratic q = random_quadratic(rng, 2, 1);
        std::size_t k = q.group().size();
        IntMat neg = IntMat::identity(k);
        for (std::size_t i = 0; i < k; ++i) neg.at(i, i) = -1;
        IntMat kneg = IntMat::identity(q.divisible_rank);
        for (std::size_t l = 0; l < q.divisible_rank; ++l) kneg.at(l, l) = -1;
        GroupIso m = make_group_iso(q.group(), q.group(), q.divisible_rank, neg,
                                    QMat(q.divisible_rank, k), kneg);
        StructuredQuadratic conj = pullback(m, q);
        std::vector<QmodZ> zero(q.divisible_rank);
        for (const auto& x : all_elements(q.group())) {
            std::vector<Int> nx(x.size());
            for (std::size_t i = 0; i < x.size(); ++i) nx[i] = -x[i];
            CHECK(evaluate(conj, elem(x, zero)) == evaluate(q, elem(nx, zero)));
        }
        // b and d pull back along with q: negation fixes b, negates d.
        CHECK(conj.pairing == q.pairing);
        HomogeneityDefect dq = homogeneity_defect(q);
        HomogeneityDefect dconj = homogeneity_defect(conj);
        for (std::size_t i = 0; i < k; ++i) CHECK(dconj.torsion[i] == -dq.torsion[i]);
    }

    SUBCASE("pullback respects composition") {
        FiniteAbelianGroup g23 = make_group({Int(2), Int(3)});
        FiniteAbelianGroup g6 = make_group({Int(6)});
        GroupIso crt = make_group_iso(g23, g6, 0, IntMat{{3, 4}}, QMat(0, 2), IntMat(0, 0));
        StructuredQuadratic q6 = mk({Int(6)}, QMat{{qz(1, 6)}}, {qz(7, 12)});
        GroupIso aut = make_group_iso(g6, g6, 0, IntMat{{5}}, QMat(0, 1), IntMat(0, 0));
        StructuredQuadratic a = pullback(crt, pullback(aut, q6));
        StructuredQuadratic b = pullback(compose(aut, crt), q6);
        CHECK(a == b);
    }
}

TEST_CASE("canonical quadratic refinement of a pairing") {
    TorsionBilinear b2 = make_torsion_bilinear(make_group({Int(2)}), QMat{{qz(1, 2)}});
    CHECK(some_quadratic_over(b2).gen_values == std::vector<QmodZ>{qz(1, 4)});

    TorsionBilinear bz = make_torsion_bilinear(make_group({Int(5)}), QMat{{qz(0, 1)}});
    CHECK(some_quadratic_over(bz).gen_values == std::vector<QmodZ>{qz(0, 1)});

    TorsionBilinear bh = make_torsion_bilinear(
        make_group({Int(2), Int(2)}), QMat{{qz(0, 1), qz(1, 2)}, {qz(1, 2), qz(0, 1)}});
    CHECK(some_quadratic_over(bh).gen_values == std::vector<QmodZ>(2, qz(0, 1)));

    // The refinements of b are exactly q0 shifted by characters.
    std::mt19937_64 rng(31);
    for (int t = 0; t < 30; ++t) {
        StructuredQuadratic q = random_quadratic(rng, 2, 0);
        StructuredQuadratic q0 = some_quadratic_over(q.pairing);
        CHECK(q0.pairing == q.pairing);
        for (std::size_t i = 0; i < q.group().size(); ++i) {
            QmodZ diff = q.gen_values[i] - q0.gen_values[i];
            CHECK((diff * q.group().orders[i]).is_zero());
        }
    }
}

TEST_CASE("normalization to invariant-factor coordinates") {
    StructuredQuadratic chain =
        mk({Int(2), Int(4)}, QMat{{qz(1, 2), qz(0, 1)}, {qz(0, 1), qz(1, 4)}},
           {qz(1, 4), qz(1, 8)});
    Normalized n1 = normalize(chain);
    CHECK(n1.q == chain);
    CHECK(n1.witness == identity_iso(chain.group()));

    StructuredQuadratic crt =
        mk({Int(2), Int(3)}, QMat{{qz(1, 2), qz(0, 1)}, {qz(0, 1), qz(1, 3)}},
           {qz(1, 4), qz(1, 3)});
    Normalized n2 = normalize(crt);
    CHECK(n2.q.group().orders == std::vector<Int>{6});
    CHECK(pullback(n2.witness, n2.q) == crt);

    StructuredQuadratic swapped =
        mk({Int(4), Int(2)}, QMat{{qz(1, 4), qz(0, 1)}, {qz(0, 1), qz(1, 2)}},
           {qz(1, 8), qz(1, 4)});
    Normalized n3 = normalize(swapped);
    CHECK(n3.q.group().orders == std::vector<Int>{2, 4});
    CHECK(pullback(n3.witness, n3.q) == swapped);

    std::mt19937_64 rng(606);
    for (int t = 0; t < 60; ++t) {
        StructuredQuadratic q = random_quadratic(rng);
        Normalized n = normalize(q);
        for (std::size_t i = 0; i + 1 < n.q.group().size(); ++i)
            CHECK(n.q.group().orders[i + 1] % n.q.group().orders[i] == 0);
        CHECK(pullback(n.witness, n.q) == q);
        CHECK(n.q.group().total_order() == q.group().total_order());
    }
}

TEST_CASE("orthogonal sums of quadratic functions") {
    StructuredQuadratic a = mk({Int(2)}, QMat{{qz(1, 2)}}, {qz(1, 4)});
    StructuredQuadratic b = mk({Int(2)}, QMat{{qz(1, 2)}}, {qz(3, 4)});
    StructuredQuadratic ab = orthogonal_sum(a, b);
    CHECK(ab.group().orders == std::vector<Int>{2, 2});
    CHECK(ab.gen_values == std::vector<QmodZ>{qz(1, 4), qz(3, 4)});
    CHECK(ab.pairing.matrix == QMat{{qz(1, 2), qz(0, 1)}, {qz(0, 1), qz(1, 2)}});

    StructuredQuadratic empty = mk({}, QMat(0, 0), {});
    CHECK(orthogonal_sum(a, empty) == a);
    CHECK(orthogonal_sum(empty, a) == a);

    StructuredQuadratic wk = mk({}, QMat(0, 0), {}, 1, {Int(2)});
    StructuredQuadratic sum = orthogonal_sum(a, wk);
    CHECK(sum.divisible_rank == 1);
    CHECK(sum.kernel_hom == std::vector<Int>{2});
    CHECK(evaluate(sum, elem({Int(1)}, {qz(1, 4)})) == qz(3, 4));
}
