#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qtor/discriminant.hpp"
#include "qtor/lattice.hpp"
#include "qtor/torsion_quad.hpp"

namespace qtor {

// Structural note on the cokernel of the embedding of characteristic classes
// into quadratic functions: only its free rank is computable here, profinite
// coordinates are not represented.
struct CokernelReport {
    std::size_t divisible_rank = 0;
    std::string description;
};

CokernelReport cokernel_report(const BilinearLattice& f);

// <[alpha], [x]> = alpha . x mod 1 for x in the dual lattice. Vanishes when
// alpha lies in the adjoint image gram * Z^n or x is integral.
QmodZ dual_pairing(const BilinearLattice& f, const std::vector<Int>& alpha,
                   const std::vector<Rational>& x);

// Characteristic form c with discriminant_quadratic({f, c}) == q, canonical
// modulo the column lattice of 2 * gram. The group and pairing of q must
// match the discriminant presentation of f exactly.
std::optional<CharacteristicForm> solve_char(const BilinearLattice& f,
                                             const StructuredQuadratic& q);

// Decides whether q arises from a characteristic form on f, with the witness
// from solve_char when it does.
struct MembershipResult {
    bool in_image = false;
    std::optional<CharacteristicForm> witness;
};

MembershipResult image_membership(const BilinearLattice& f, const StructuredQuadratic& q);

}  // namespace qtor
