#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstddef>
#include <string>
#include <vector>

#include "qtor/errors.hpp"

namespace qtor {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

Int gcd(const Int& a, const Int& b);
Int lcm(const Int& a, const Int& b);

// gcd of all entries, 0 for an empty or all-zero vector
Int content(const std::vector<Int>& v);

// x * (x - 1) / 2, valid for any integer x
Int choose2(const Int& x);

Int numer(const Rational& r);
Int denom(const Rational& r);

// floor of p/q; q must be positive
Int floor_div(const Int& p, const Int& q);

// canonical representative of r + Z in [0, 1)
Rational mod1(const Rational& r);

// bounds-checked conversion for loop counters and container sizes
std::size_t to_size(const Int& n);

// Residue class in Q/Z. Stored as the canonical representative in [0, 1).
class QmodZ {
public:
    QmodZ() : rep_(0) {}
    explicit QmodZ(const Rational& r) : rep_(mod1(r)) {}
    QmodZ(const Int& num, const Int& den);

    const Rational& rep() const { return rep_; }
    Int numerator() const { return numer(rep_); }
    // order of the class in Q/Z
    Int denominator() const { return denom(rep_); }

    bool is_zero() const { return rep_ == 0; }

    QmodZ operator+(const QmodZ& o) const { return QmodZ(rep_ + o.rep_); }
    QmodZ operator-(const QmodZ& o) const { return QmodZ(rep_ - o.rep_); }
    QmodZ operator-() const { return QmodZ(-rep_); }
    QmodZ operator*(const Int& n) const { return QmodZ(rep_ * Rational(n)); }
    bool operator==(const QmodZ& o) const { return rep_ == o.rep_; }
    bool operator!=(const QmodZ& o) const { return rep_ != o.rep_; }
    bool operator<(const QmodZ& o) const { return rep_ < o.rep_; }

private:
    Rational rep_;
};

// strict "p/q" or bare "p"; the result is reduced with positive denominator
Rational parse_rational(const std::string& s);

// always "p/q", numerator sign first, reduced
std::string format_rational(const Rational& r);

}  // namespace qtor
