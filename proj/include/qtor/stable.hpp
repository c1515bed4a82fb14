#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qtor/classify.hpp"
#include "qtor/lattice.hpp"

namespace qtor {

// #positive - #negative pivots of a rational congruent diagonalization;
// kernel directions contribute nothing.
Int signature(const BilinearLattice& f);

// Orthogonal sum with the unit summands diag(signs), characteristic
// coefficient 1 on each new coordinate. Sign entries must be +1 or -1.
Triple stabilize(const Triple& t, const std::vector<Int>& signs);

// Exact check that p is a basis-change isomorphism of triples: p unimodular,
// p^T gram_b p == gram_a, and c_a - p^T c_b in the column lattice of
// 2 gram_a.
bool is_triple_isomorphism(const Triple& a, const Triple& b, const IntMat& p);

// First p with |entries| <= entry_bound that is a triple isomorphism from a
// to b, columns enumerated in lexicographic order; nullopt when none exists
// within the bound.
std::optional<IntMat> search_bounded_isometry(const Triple& a, const Triple& b,
                                              const Int& entry_bound);

// Verdict of the stable equivalence decision together with unit stabilizers
// balancing rank and signature on both sides; when the verdict is false,
// reason carries the obstruction reported for the discriminant functions.
struct StabilizationCertificate {
    bool verdict = false;
    std::vector<Int> left_signs, right_signs;
    std::string reason;
};

StabilizationCertificate stably_equivalent(const Triple& a, const Triple& b,
                                           const ClassifyOptions& opts = {});

}  // namespace qtor
