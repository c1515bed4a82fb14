#pragma once

#include <vector>

#include "qtor/lattice.hpp"
#include "qtor/torsion_quad.hpp"

namespace qtor {

// The group M#/M of a bilinear lattice, split into a finite part presented by
// the nondegenerate quotient and a divisible part from the kernel.
struct DiscriminantGroup {
    std::vector<Int> orders;       // d1 | d2 | ..., all > 1; |T| = |det fbar|
    std::size_t divisible_rank = 0;
    RatMat gen_reps;               // columns: torsion generators in fbar coordinates
    IntMat kernel_basis;           // columns: ambient basis of the kernel
    Split split;                   // the recorded section data
};

DiscriminantGroup discriminant_group(const BilinearLattice& f);

// b[i][j] = f(g_i, g_j) mod Z at the stored generator representatives.
QMat linking_pairing(const DiscriminantGroup& g, const BilinearLattice& f);

// The quadratic function x -> (f(x,x) - c(x))/2 mod Z on the discriminant
// group, with the kernel part acting by w.v for w = -c(kernel basis)/2.
StructuredQuadratic discriminant_quadratic(const Triple& t);

// Direct evaluation at a rational vector x with f(x, -) integral on the
// lattice; independent of the representative mod M.
QmodZ evaluate_phi(const Triple& t, const std::vector<Rational>& x);

}  // namespace qtor
