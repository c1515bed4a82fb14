#pragma once

#include <optional>
#include <vector>

#include "qtor/int_matrix.hpp"

namespace qtor {

// U * A * V = D with U, V unimodular, D diagonal, d1 | d2 | ... and every
// di >= 0, zero entries trailing. Pivot selection: smallest nonzero absolute
// value in the remaining block, ties broken by lowest row then lowest column.
struct SmithResult {
    IntMat u, d, v;
    std::size_t rank = 0;  // nonzero diagonal entries
    std::vector<Int> diagonal() const;
};

SmithResult smith_normal_form(const IntMat& a);

// All integer solutions of A x = b.
struct AffineLattice {
    std::vector<Int> particular;
    IntMat homogeneous;  // columns span the solution lattice of A x = 0 (a basis)
};
std::optional<AffineLattice> solve_linear(const IntMat& a, const std::vector<Int>& b);

// Componentwise A x == b (mod m); a zero modulus row is an exact equation
// over Z. The particular solution is canonical: reduced modulo the
// homogeneous solution lattice.
struct CongruenceSolution {
    std::vector<Int> particular;
    IntMat homogeneous;  // columns span the homogeneous solution lattice
};
std::optional<CongruenceSolution> solve_congruence_system(const IntMat& a,
                                                          const std::vector<Int>& b,
                                                          const std::vector<Int>& moduli);
std::optional<std::vector<Int>> solve_congruences(const IntMat& a, const std::vector<Int>& b,
                                                  const std::vector<Int>& moduli);

// basis of the lattice spanned by the columns (columns of the result)
IntMat lattice_column_basis(const IntMat& span);

// canonical representative of v modulo the lattice spanned by the columns of
// span; vectors in the same coset reduce to the same representative
std::vector<Int> reduce_mod_lattice(const std::vector<Int>& v, const IntMat& span);

}  // namespace qtor
