#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

#include "qtor/int_matrix.hpp"
#include "qtor/numeric.hpp"

namespace qtor {

// Direct sum of cyclic groups Z/orders[i]; trivial factors are omitted.
struct FiniteAbelianGroup {
    std::vector<Int> orders;

    std::size_t size() const { return orders.size(); }
    Int total_order() const;
    bool operator==(const FiniteAbelianGroup&) const = default;
};

FiniteAbelianGroup make_group(std::vector<Int> orders);

// Dense matrix over Q/Z.
class QMat {
public:
    QMat() = default;
    QMat(std::size_t r, std::size_t c) : rows_(r), cols_(c), data_(r * c) {}
    QMat(std::initializer_list<std::initializer_list<QmodZ>> rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    QmodZ& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const QmodZ& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    bool is_symmetric() const;

    QMat operator+(const QMat& o) const;
    QMat operator-() const;
    bool operator==(const QMat&) const = default;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<QmodZ> data_;
};

QMat qmul(const IntMat& a, const QMat& b);
QMat qmul(const QMat& a, const IntMat& b);

// Symmetric pairing on the group: orders[i] * matrix[i][j] = 0 for all i, j.
struct TorsionBilinear {
    FiniteAbelianGroup group;
    QMat matrix;

    bool operator==(const TorsionBilinear&) const = default;
};

TorsionBilinear make_torsion_bilinear(FiniteAbelianGroup group, QMat matrix);

QmodZ pairing_value(const TorsionBilinear& b, const std::vector<Int>& x,
                    const std::vector<Int>& y);

// Element of T + (Q/Z)^s: integer coordinates at the torsion generators and
// residue coordinates in the divisible part.
struct TorsionElement {
    std::vector<Int> torsion;
    std::vector<QmodZ> divisible;

    bool operator==(const TorsionElement&) const = default;
};

std::vector<Int> reduce_coords(const FiniteAbelianGroup& g, std::vector<Int> x);

// Quadratic function q on T + (Q/Z)^s with polarization b_q equal to the
// stored pairing on T and q linear on the divisible part via kernel_hom.
struct StructuredQuadratic {
    TorsionBilinear pairing;
    std::vector<QmodZ> gen_values;
    std::size_t divisible_rank = 0;
    std::vector<Int> kernel_hom;

    const FiniteAbelianGroup& group() const { return pairing.group; }
    bool operator==(const StructuredQuadratic&) const = default;
};

StructuredQuadratic make_quadratic(TorsionBilinear pairing, std::vector<QmodZ> gen_values,
                                   std::size_t divisible_rank = 0,
                                   std::vector<Int> kernel_hom = {});

QmodZ evaluate(const StructuredQuadratic& q, const TorsionElement& x);

// d(x) = 2 q(x) - b(x, x); zero exactly when q is homogeneous.
struct HomogeneityDefect {
    std::vector<QmodZ> torsion;  // d at the torsion generators
    std::vector<Int> kernel;     // 2 * kernel_hom on the divisible part

    bool is_zero() const;
    bool operator==(const HomogeneityDefect&) const = default;
};

HomogeneityDefect homogeneity_defect(const StructuredQuadratic& q);

// q restricted to the radical of b_q: the kernel of the adjoint of the
// torsion pairing together with the whole divisible part. The restriction is
// a homomorphism.
struct RadicalRestriction {
    std::vector<Int> orders;    // invariant factors >= 2 of the torsion radical
    IntMat generators;          // columns: torsion coordinates, orders as above
    std::vector<QmodZ> values;  // q at the generator columns
    std::size_t divisible_rank = 0;
    std::vector<Int> kernel_hom;
};

RadicalRestriction radical_restriction(const StructuredQuadratic& q);

// (alpha . q)(x) = q(x) + b(alpha, x); alpha given in torsion coordinates.
StructuredQuadratic act(const std::vector<Int>& alpha, const StructuredQuadratic& q);

// Isomorphism of structured groups. Triangular: the divisible part maps into
// itself by a GL(Z) matrix, torsion generators may pick up divisible
// components through `mixing`.
struct GroupIso {
    FiniteAbelianGroup source, target;
    std::size_t divisible_rank = 0;
    IntMat matrix;         // target torsion coordinates of source generators
    QMat mixing;           // divisible components of source generators
    IntMat kernel_matrix;  // action on (Q/Z)^s, determinant +-1

    bool operator==(const GroupIso&) const = default;
};

GroupIso make_group_iso(FiniteAbelianGroup source, FiniteAbelianGroup target,
                        std::size_t divisible_rank, IntMat matrix, QMat mixing,
                        IntMat kernel_matrix);
GroupIso identity_iso(const FiniteAbelianGroup& g, std::size_t divisible_rank = 0);
GroupIso compose(const GroupIso& outer, const GroupIso& inner);
GroupIso inverse(const GroupIso& psi);
TorsionElement apply(const GroupIso& psi, const TorsionElement& x);

// psi from G' to G, q on G; the result is x -> q(psi(x)) on G'.
StructuredQuadratic pullback(const GroupIso& psi, const StructuredQuadratic& q);

// A quadratic refinement of b: the smallest representative solution at each
// generator; no divisible part.
StructuredQuadratic some_quadratic_over(const TorsionBilinear& b);

// Isomorphic copy in invariant-factor coordinates d1 | d2 | ... with the
// witness satisfying pullback(witness, result) == input.
struct Normalized {
    StructuredQuadratic q;
    GroupIso witness;
};

Normalized normalize(const StructuredQuadratic& q);

StructuredQuadratic orthogonal_sum(const StructuredQuadratic& a, const StructuredQuadratic& b);

}  // namespace qtor
