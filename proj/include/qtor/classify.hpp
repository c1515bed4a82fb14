#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qtor/cyclotomic.hpp"
#include "qtor/torsion_quad.hpp"

namespace qtor {

struct ClassifyOptions {
    Int max_search_order = 512;   // torsion bound for isomorphism searches
    Int max_eval_order = 10000;   // torsion bound for Gauss sum evaluation
};

// Exact sum over the torsion part: S = sum_x zeta_N^{N q(x)} with N the lcm
// of the value denominators; norm_square records |T|. The divisible part is
// ignored (evaluation through the implied section).
CyclotomicNumber gauss_sum(const StructuredQuadratic& q, const ClassifyOptions& opts = {});

// For alpha with 2 alpha = 0 and q(alpha) = 0: the involution
// sigma(x) = x + n(x) alpha, n(x)/2 = b(alpha, x), which satisfies
// pullback(sigma, q) == act(alpha, q). Verified before returning.
GroupIso fundamental_automorphism(const StructuredQuadratic& q, const std::vector<Int>& alpha);

// Decision with a failure reason: one of "group", "radical", "pairing",
// "defect", "gauss", "values"; empty when a witness exists.
struct IsoDecision {
    std::optional<GroupIso> witness;
    std::string obstruction;

    bool isomorphic() const { return witness.has_value(); }
};

// Witness convention: psi maps q.group() to qp.group() and
// pullback(psi, qp) == q; every returned witness is verified against that
// identity before being handed out.
IsoDecision decide_isomorphic(const StructuredQuadratic& q, const StructuredQuadratic& qp,
                              const ClassifyOptions& opts = {});
std::optional<GroupIso> is_isomorphic(const StructuredQuadratic& q,
                                      const StructuredQuadratic& qp,
                                      const ClassifyOptions& opts = {});

// Independent oracle: enumerates every tuple of generator images, filters by
// validity, compares values pointwise. Divisible parts are matched through
// the content of the kernel homomorphisms.
std::optional<GroupIso> brute_force_isomorphic(const StructuredQuadratic& q,
                                               const StructuredQuadratic& qp);

// All quadratic refinements of b: the base refinement shifted by every
// character of the group; the count is the group order.
std::vector<StructuredQuadratic> enumerate_refinements(const TorsionBilinear& b,
                                                       const ClassifyOptions& opts = {});

// Deterministic snapshot of the classifying data of q in normalized
// coordinates. Not a canonical form: the pairing matrix and generator data
// still depend on the chosen coordinates.
struct InvariantBundle {
    std::vector<Int> orders;
    std::size_t divisible_rank = 0;
    QMat pairing;
    HomogeneityDefect defect;
    RadicalRestriction radical;
    CyclotomicNumber gauss;
};

InvariantBundle invariants(const StructuredQuadratic& q, const ClassifyOptions& opts = {});

}  // namespace qtor
