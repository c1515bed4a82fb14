#pragma once

#include <cstddef>
#include <vector>

#include "qtor/numeric.hpp"

namespace qtor {

// Integer polynomial, constant coefficient first.
using IntPoly = std::vector<Int>;

// n-th cyclotomic polynomial, computed by exact division of x^n - 1 by the
// cyclotomic polynomials of the proper divisors of n
IntPoly cyclotomic_polynomial(std::size_t n);

// Exact element S of Z[zeta_level] together with the group order under the
// square root of the Gauss sum normalization: the represented value is
// S / sqrt(norm_square).
struct CyclotomicNumber {
    std::size_t level = 1;
    std::vector<Int> coeffs = {Int(0)};  // length == level, S = sum coeffs[k] zeta^k
    Int norm_square = 1;

    static CyclotomicNumber integer(const Int& value, const Int& norm_square);
    // e^{2 pi i e}, norm_square 1
    static CyclotomicNumber root_of_unity(const QmodZ& e);
};

CyclotomicNumber lift_to_level(const CyclotomicNumber& x, std::size_t level);
CyclotomicNumber conjugate(const CyclotomicNumber& x);
CyclotomicNumber multiply(const CyclotomicNumber& x, const CyclotomicNumber& y);

// equality of the ring elements alone: the coefficient difference at the
// common level is divisible by that level's cyclotomic polynomial
bool sums_equal(const CyclotomicNumber& x, const CyclotomicNumber& y);

// equality of Gauss sum data: ring elements equal and norm_squares equal
bool cyclotomic_equal(const CyclotomicNumber& x, const CyclotomicNumber& y);

}  // namespace qtor
