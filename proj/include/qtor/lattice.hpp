#pragma once

#include <vector>

#include "qtor/int_matrix.hpp"
#include "qtor/numeric.hpp"

namespace qtor {

// Symmetric bilinear form on Z^rank given by its Gram matrix.
struct BilinearLattice {
    IntMat gram;

    std::size_t rank() const { return gram.rows(); }
    bool operator==(const BilinearLattice&) const = default;
};

// Throws invalid_input unless gram is square and symmetric.
BilinearLattice make_lattice(IntMat gram);

// Integer covector c with c[i] == gram[i][i] mod 2 for every i.
struct CharacteristicForm {
    std::vector<Int> coeffs;

    bool operator==(const CharacteristicForm&) const = default;
};

bool is_valid_char(const BilinearLattice& f, const CharacteristicForm& c);
void validate_char(const BilinearLattice& f, const CharacteristicForm& c);

// Rational vector w with f(x,x) - f(w,x) even for all basis x.
struct WuClass {
    std::vector<Rational> coords;
    bool integral = false;
};

struct Triple {
    BilinearLattice lattice;
    CharacteristicForm form;

    bool operator==(const Triple&) const = default;
};

Triple make_triple(BilinearLattice f, CharacteristicForm c);

// c[i] = gram[i][i]; always a valid characteristic form.
CharacteristicForm canonical_char(const BilinearLattice& f);

// Columns form a saturated basis of {x : gram x = 0}, first nonzero entry
// of each column positive.
IntMat kernel_of_adjoint(const BilinearLattice& f);

// proj * section = identity; gram = section-transport of fbar plus kernel.
struct Split {
    BilinearLattice fbar;
    IntMat proj;     // rank(fbar) x rank(f)
    IntMat section;  // rank(f) x rank(fbar)
};

Split split_nondegenerate(const BilinearLattice& f);

// Values of the characteristic form on the kernel basis (all even) and
// their gcd (0 when the kernel is trivial or the values all vanish).
struct KernelRestriction {
    std::vector<Int> values;
    Int content;
};

KernelRestriction restrict_char_to_kernel(const Triple& t);

// Solve gram * w = c over Q. Requires det(gram) != 0.
WuClass char_to_wu(const BilinearLattice& f, const CharacteristicForm& c);

// c = gram * w; throws if the image is not integral or fails the parity
// condition. Requires det(gram) != 0.
CharacteristicForm wu_to_char(const BilinearLattice& f, const WuClass& w);

// Pull back c along the section: result[i] = c(section column i).
CharacteristicForm retract_char(const BilinearLattice& f, const IntMat& section,
                                const CharacteristicForm& c);

// Block-diagonal Gram, concatenated characteristic coefficients.
Triple orthogonal_sum(const Triple& a, const Triple& b);

}  // namespace qtor
