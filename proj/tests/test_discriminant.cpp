#include <random>
#include <vector>

#include "doctest.h"
#include "qtor/discriminant.hpp"
#include "qtor/errors.hpp"

using namespace qtor;

namespace {

QmodZ qz(long long n, long long d) { return QmodZ(Int(n), Int(d)); }

std::vector<Rational> mul_int_rat(const IntMat& m, const std::vector<Rational>& v) {
    std::vector<Rational> r(m.rows(), Rational(0));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r[i] += Rational(m.at(i, j)) * v[j];
    return r;
}

std::vector<Rational> ambient_generator(const DiscriminantGroup& g, std::size_t i) {
    return mul_int_rat(g.split.section, g.gen_reps.column(i));
}

IntMat random_symmetric(std::mt19937_64& rng, std::size_t n, int lo, int hi) {
    std::uniform_int_distribution<int> d(lo, hi);
    IntMat m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            Int v = d(rng);
            m.at(i, j) = v;
            m.at(j, i) = v;
        }
    return m;
}

Triple random_triple(std::mt19937_64& rng, std::size_t n) {
    BilinearLattice f = make_lattice(random_symmetric(rng, n, -4, 4));
    CharacteristicForm c = canonical_char(f);
    std::uniform_int_distribution<int> d(-3, 3);
    for (auto& v : c.coeffs) v += 2 * Int(d(rng));
    return make_triple(f, c);
}

}  // namespace

TEST_CASE("discriminant group structure") {
    DiscriminantGroup g2 = discriminant_group(make_lattice(IntMat{{2}}));
    CHECK(g2.orders == std::vector<Int>{2});
    CHECK(g2.divisible_rank == 0);
    CHECK(g2.gen_reps.column(0) == std::vector<Rational>{Rational(1, 2)});

    DiscriminantGroup g1 = discriminant_group(make_lattice(IntMat{{1}}));
    CHECK(g1.orders.empty());
    CHECK(g1.divisible_rank == 0);

    DiscriminantGroup g0 = discriminant_group(make_lattice(IntMat{{0}}));
    CHECK(g0.orders.empty());
    CHECK(g0.divisible_rank == 1);

    SUBCASE("orders multiply to |det fbar| and form a chain") {
        std::mt19937_64 rng(808);
        for (int t = 0; t < 120; ++t) {
            BilinearLattice f = make_lattice(random_symmetric(rng, t % 5, -4, 4));
            DiscriminantGroup g = discriminant_group(f);
            Int prod = 1;
            for (const Int& d : g.orders) prod *= d;
            Int det = g.split.fbar.gram.determinant();
            CHECK(prod == (det < 0 ? -det : det));
            for (std::size_t i = 0; i + 1 < g.orders.size(); ++i)
                CHECK(g.orders[i + 1] % g.orders[i] == 0);
            // order(g_i) * g_i lies in the quotient lattice.
            for (std::size_t i = 0; i < g.orders.size(); ++i)
                for (const Rational& x : g.gen_reps.column(i))
                    CHECK(denom(x * Rational(g.orders[i])) == 1);
        }
    }
}

TEST_CASE("linking pairing") {
    BilinearLattice f2 = make_lattice(IntMat{{2}});
    CHECK(linking_pairing(discriminant_group(f2), f2) == QMat{{qz(1, 2)}});

    BilinearLattice fh = make_lattice(IntMat{{0, 2}, {2, 0}});
    CHECK(linking_pairing(discriminant_group(fh), fh) ==
          QMat{{qz(0, 1), qz(1, 2)}, {qz(1, 2), qz(0, 1)}});

    BilinearLattice f1 = make_lattice(IntMat{{1}});
    QMat empty = linking_pairing(discriminant_group(f1), f1);
    CHECK(empty.rows() == 0);

    CHECK_THROWS_AS(linking_pairing(discriminant_group(f2), fh), invalid_input);

    SUBCASE("pairing is annihilated by the orders and nondegenerate iff fbar is") {
        std::mt19937_64 rng(9001);
        for (int t = 0; t < 80; ++t) {
            BilinearLattice f = make_lattice(random_symmetric(rng, 1 + t % 4, -4, 4));
            DiscriminantGroup g = discriminant_group(f);
            QMat b = linking_pairing(g, f);
            TorsionBilinear tb = make_torsion_bilinear(make_group(g.orders), b);
            StructuredQuadratic q = some_quadratic_over(tb);
            RadicalRestriction rad = radical_restriction(q);
            CHECK(rad.orders.empty());  // fbar nondegenerate by construction
        }
    }
}

TEST_CASE("discriminant quadratic function") {
    Triple t0 = make_triple(make_lattice(IntMat{{2}}), {{0}});
    StructuredQuadratic q0 = discriminant_quadratic(t0);
    CHECK(q0.group().orders == std::vector<Int>{2});
    CHECK(q0.gen_values == std::vector<QmodZ>{qz(1, 4)});
    CHECK(q0.divisible_rank == 0);

    Triple t2 = make_triple(make_lattice(IntMat{{2}}), {{2}});
    CHECK(discriminant_quadratic(t2).gen_values == std::vector<QmodZ>{qz(3, 4)});

    Triple tz = make_triple(make_lattice(IntMat{{0}}), {{0}});
    StructuredQuadratic qz0 = discriminant_quadratic(tz);
    CHECK(qz0.group().size() == 0);
    CHECK(qz0.divisible_rank == 1);
    CHECK(qz0.kernel_hom == std::vector<Int>{0});

    // Degenerate block with a nonzero kernel restriction.
    Triple td = make_triple(make_lattice(IntMat{{2, 0}, {0, 0}}), {{0, 2}});
    StructuredQuadratic qd = discriminant_quadratic(td);
    CHECK(qd.group().orders == std::vector<Int>{2});
    CHECK(qd.gen_values == std::vector<QmodZ>{qz(1, 4)});
    CHECK(qd.divisible_rank == 1);
    CHECK(qd.kernel_hom == std::vector<Int>{-1});

    // Pinned defect values on a rank one lattice.
    Triple t4 = make_triple(make_lattice(IntMat{{4}}), {{2}});
    StructuredQuadratic q4 = discriminant_quadratic(t4);
    CHECK(q4.gen_values == std::vector<QmodZ>{qz(7, 8)});
    CHECK(homogeneity_defect(q4).torsion == std::vector<QmodZ>{qz(1, 2)});
}

TEST_CASE("direct evaluation of the discriminant function") {
    Triple t = make_triple(make_lattice(IntMat{{2}}), {{0}});
    CHECK(evaluate_phi(t, {Rational(1, 2)}) == qz(1, 4));
    CHECK(evaluate_phi(t, {Rational(1)}) == qz(0, 1));
    CHECK(evaluate_phi(t, {Rational(3, 2)}) == qz(1, 4));
    CHECK_THROWS_AS(evaluate_phi(t, {Rational(1, 3)}), invalid_input);
    CHECK_THROWS_AS(evaluate_phi(t, {Rational(1), Rational(2)}), invalid_input);

    SUBCASE("representative independence and lattice points evaluate to zero") {
        std::mt19937_64 rng(1812);
        std::uniform_int_distribution<int> d(-3, 3);
        for (int t2 = 0; t2 < 80; ++t2) {
            std::size_t n = 1 + t2 % 4;
            Triple tr = random_triple(rng, n);
            std::vector<Rational> m(n);
            for (auto& v : m) v = d(rng);
            CHECK(evaluate_phi(tr, m) == qz(0, 1));
            DiscriminantGroup g = discriminant_group(tr.lattice);
            if (g.orders.empty()) continue;
            std::vector<Rational> x = ambient_generator(g, g.orders.size() - 1);
            std::vector<Rational> shifted = x;
            for (std::size_t i = 0; i < n; ++i) shifted[i] += m[i];
            CHECK(evaluate_phi(tr, shifted) == evaluate_phi(tr, x));
        }
    }
}

TEST_CASE("discriminant construction properties") {
    std::mt19937_64 rng(271828);
    for (int t = 0; t < 120; ++t) {
        std::size_t n = t % 5;
        Triple tr = random_triple(rng, n);
        DiscriminantGroup g = discriminant_group(tr.lattice);
        StructuredQuadratic q = discriminant_quadratic(tr);
        std::size_t k = g.orders.size();

        // Polarization of phi matches the linking pairing at representatives.
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) {
                std::vector<Rational> x = ambient_generator(g, i);
                std::vector<Rational> y = ambient_generator(g, j);
                std::vector<Rational> xy(n);
                for (std::size_t l = 0; l < n; ++l) xy[l] = x[l] + y[l];
                CHECK(evaluate_phi(tr, xy) - evaluate_phi(tr, x) - evaluate_phi(tr, y) ==
                      q.pairing.matrix.at(i, j));
            }

        // Structured evaluation agrees with direct evaluation, including the
        // kernel part.
        std::uniform_int_distribution<int> cd(0, 11);
        std::vector<Int> coords(k);
        for (std::size_t i = 0; i < k; ++i) coords[i] = cd(rng);
        std::vector<Rational> x(n, Rational(0));
        for (std::size_t i = 0; i < k; ++i) {
            std::vector<Rational> gi = ambient_generator(g, i);
            for (std::size_t l = 0; l < n; ++l) x[l] += Rational(coords[i]) * gi[l];
        }
        std::vector<QmodZ> kern(g.divisible_rank);
        for (std::size_t j = 0; j < g.divisible_rank; ++j) {
            Rational vj(cd(rng), 6);
            kern[j] = QmodZ(vj);
            for (std::size_t l = 0; l < n; ++l)
                x[l] += vj * Rational(g.kernel_basis.at(l, j));
        }
        CHECK(evaluate_phi(tr, x) == evaluate(q, {coords, kern}));

        // The homogeneity defect at g_i is -c(rep(g_i)).
        HomogeneityDefect dq = homogeneity_defect(q);
        for (std::size_t i = 0; i < k; ++i) {
            std::vector<Rational> gi = ambient_generator(g, i);
            Rational cg = 0;
            for (std::size_t l = 0; l < n; ++l) cg += Rational(tr.form.coeffs[l]) * gi[l];
            CHECK(dq.torsion[i] == QmodZ(-cg));
        }

        // Shifting c by 2 f(u, -) does not change the function at all.
        std::vector<Int> u(n);
        for (auto& v : u) v = cd(rng) - 5;
        Triple shifted = tr;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                shifted.form.coeffs[i] += 2 * tr.lattice.gram.at(i, j) * u[j];
        CHECK(discriminant_quadratic(shifted) == q);
    }
}

TEST_CASE("discriminant of orthogonal sums") {
    // Coprime determinants: the sum discriminant and the discriminant sum
    // agree after normalization up to the expected group and value multiset.
    Triple a = make_triple(make_lattice(IntMat{{2}}), {{0}});
    Triple b = make_triple(make_lattice(IntMat{{3}}), {{3}});
    StructuredQuadratic sum_disc = discriminant_quadratic(orthogonal_sum(a, b));
    StructuredQuadratic disc_sum =
        orthogonal_sum(discriminant_quadratic(a), discriminant_quadratic(b));
    Normalized ns = normalize(sum_disc);
    Normalized nd = normalize(disc_sum);
    CHECK(ns.q.group().orders == nd.q.group().orders);

    auto value_multiset = [](const StructuredQuadratic& q) {
        std::vector<QmodZ> vals;
        std::vector<std::vector<Int>> elems{{}};
        for (const Int& n : q.group().orders) {
            std::vector<std::vector<Int>> next;
            for (const auto& x : elems)
                for (Int c = 0; c < n; ++c) {
                    auto y = x;
                    y.push_back(c);
                    next.push_back(y);
                }
            elems = next;
        }
        for (const auto& x : elems)
            vals.push_back(evaluate(q, {x, std::vector<QmodZ>(q.divisible_rank)}));
        std::sort(vals.begin(), vals.end());
        return vals;
    };
    CHECK(value_multiset(ns.q) == value_multiset(nd.q));
    CHECK(value_multiset(sum_disc) == value_multiset(disc_sum));
}
