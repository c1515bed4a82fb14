#include "qtor/embedding.hpp"

#include "qtor/errors.hpp"
#include "qtor/smith.hpp"

namespace qtor {

namespace {

void check_in_dual(const BilinearLattice& f, const std::vector<Rational>& x) {
    for (std::size_t i = 0; i < f.rank(); ++i) {
        Rational row = 0;
        for (std::size_t j = 0; j < f.rank(); ++j)
            row += Rational(f.gram.at(i, j)) * x[j];
        if (denom(row) != 1) throw invalid_input("vector is not in the dual lattice");
    }
}

}  // namespace

CokernelReport cokernel_report(const BilinearLattice& f) {
    CokernelReport r;
    r.divisible_rank = kernel_of_adjoint(f).cols();
    r.description =
        "free rank of the cokernel of the characteristic-class embedding; "
        "classes beyond the integral ones are not representable";
    return r;
}

QmodZ dual_pairing(const BilinearLattice& f, const std::vector<Int>& alpha,
                   const std::vector<Rational>& x) {
    if (alpha.size() != f.rank() || x.size() != f.rank())
        throw invalid_input("length mismatch");
    check_in_dual(f, x);
    Rational v = 0;
    for (std::size_t i = 0; i < f.rank(); ++i) v += Rational(alpha[i]) * x[i];
    return QmodZ(v);
}

std::optional<CharacteristicForm> solve_char(const BilinearLattice& f,
                                             const StructuredQuadratic& q) {
    DiscriminantGroup d = discriminant_group(f);
    if (q.group().orders != d.orders || q.divisible_rank != d.divisible_rank)
        throw invalid_input("group does not match the discriminant presentation");
    if (q.pairing.matrix != linking_pairing(d, f))
        throw invalid_input("pairing does not match the linking pairing");

    CharacteristicForm c0 = canonical_char(f);
    StructuredQuadratic q0 = discriminant_quadratic({f, c0});

    std::size_t n = f.rank(), k = d.orders.size(), s = d.divisible_rank;
    RatMat section = RatMat::from_int(d.split.section);

    // rows: alpha . g_i = q0(g_i) - q(g_i) mod 1 at the ambient generator
    // representatives, then alpha . k_l = w0_l - w_l exactly on the kernel
    IntMat a(k + s, n);
    std::vector<Int> rhs(k + s), moduli(k + s);
    for (std::size_t i = 0; i < k; ++i) {
        std::vector<Rational> g = section.mul(d.gen_reps.column(i));
        QmodZ target = q0.gen_values[i] - q.gen_values[i];
        Int den = target.denominator();
        for (std::size_t j = 0; j < n; ++j) den = lcm(den, denom(g[j]));
        for (std::size_t j = 0; j < n; ++j) a.at(i, j) = numer(g[j] * Rational(den));
        rhs[i] = numer(target.rep() * Rational(den));
        moduli[i] = den;
    }
    for (std::size_t l = 0; l < s; ++l) {
        for (std::size_t j = 0; j < n; ++j) a.at(k + l, j) = d.kernel_basis.at(j, l);
        rhs[k + l] = q0.kernel_hom[l] - q.kernel_hom[l];
        moduli[k + l] = 0;
    }

    auto alpha = solve_congruences(a, rhs, moduli);
    if (!alpha) return std::nullopt;

    IntMat doubled(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) doubled.at(i, j) = 2 * f.gram.at(i, j);
    std::vector<Int> c(n);
    for (std::size_t i = 0; i < n; ++i) c[i] = c0.coeffs[i] + 2 * (*alpha)[i];
    CharacteristicForm out{reduce_mod_lattice(c, doubled)};
    validate_char(f, out);
    if (discriminant_quadratic({f, out}) != q)
        throw std::logic_error("characteristic witness failed verification");
    return out;
}

MembershipResult image_membership(const BilinearLattice& f, const StructuredQuadratic& q) {
    auto c = solve_char(f, q);
    if (!c) return {false, std::nullopt};
    return {true, std::move(c)};
}

}  // namespace qtor
