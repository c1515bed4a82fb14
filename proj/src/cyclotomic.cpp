#include "qtor/cyclotomic.hpp"

#include <map>

namespace qtor {

namespace {

void poly_trim(IntPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

// exact division by a monic divisor; remainder returned in place of num
IntPoly poly_divmod_monic(IntPoly& num, const IntPoly& den) {
    if (den.empty() || den.back() != 1) throw invalid_input("divisor must be monic");
    poly_trim(num);
    IntPoly q;
    if (num.size() >= den.size()) q.assign(num.size() - den.size() + 1, Int(0));
    while (num.size() >= den.size()) {
        Int lead = num.back();
        std::size_t shift = num.size() - den.size();
        q[shift] = lead;
        for (std::size_t i = 0; i < den.size(); ++i) num[shift + i] -= lead * den[i];
        poly_trim(num);
    }
    return q;
}

std::vector<std::size_t> divisors(std::size_t n) {
    std::vector<std::size_t> out;
    for (std::size_t d = 1; d * d <= n; ++d)
        if (n % d == 0) {
            out.push_back(d);
            if (d != n / d) out.push_back(n / d);
        }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

IntPoly cyclotomic_polynomial(std::size_t n) {
    if (n == 0) throw invalid_input("cyclotomic polynomial index must be positive");
    static std::map<std::size_t, IntPoly> cache;
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    IntPoly p(n + 1, Int(0));
    p[0] = -1;
    p[n] = 1;
    for (std::size_t d : divisors(n)) {
        if (d == n) continue;
        IntPoly phi = cyclotomic_polynomial(d);
        IntPoly q = poly_divmod_monic(p, phi);
        if (!p.empty()) throw invalid_input("cyclotomic division left a remainder");
        p = std::move(q);
    }
    cache[n] = p;
    return p;
}

CyclotomicNumber CyclotomicNumber::integer(const Int& value, const Int& norm_square) {
    CyclotomicNumber c;
    c.level = 1;
    c.coeffs = {value};
    c.norm_square = norm_square;
    return c;
}

CyclotomicNumber CyclotomicNumber::root_of_unity(const QmodZ& e) {
    CyclotomicNumber c;
    c.level = to_size(e.denominator());
    c.coeffs.assign(c.level, Int(0));
    c.coeffs[to_size(e.numerator())] = 1;
    c.norm_square = 1;
    return c;
}

CyclotomicNumber lift_to_level(const CyclotomicNumber& x, std::size_t level) {
    if (level % x.level != 0) throw invalid_input("cyclotomic level does not divide target");
    if (level == x.level) return x;
    CyclotomicNumber y;
    y.level = level;
    y.coeffs.assign(level, Int(0));
    std::size_t stride = level / x.level;
    for (std::size_t k = 0; k < x.level; ++k) y.coeffs[k * stride] = x.coeffs[k];
    y.norm_square = x.norm_square;
    return y;
}

CyclotomicNumber conjugate(const CyclotomicNumber& x) {
    CyclotomicNumber y;
    y.level = x.level;
    y.coeffs.assign(x.level, Int(0));
    for (std::size_t k = 0; k < x.level; ++k) y.coeffs[(x.level - k) % x.level] = x.coeffs[k];
    y.norm_square = x.norm_square;
    return y;
}

CyclotomicNumber multiply(const CyclotomicNumber& x, const CyclotomicNumber& y) {
    std::size_t level = to_size(lcm(Int(x.level), Int(y.level)));
    CyclotomicNumber a = lift_to_level(x, level), b = lift_to_level(y, level);
    CyclotomicNumber p;
    p.level = level;
    p.coeffs.assign(level, Int(0));
    for (std::size_t i = 0; i < level; ++i) {
        if (a.coeffs[i] == 0) continue;
        for (std::size_t j = 0; j < level; ++j) {
            if (b.coeffs[j] == 0) continue;
            p.coeffs[(i + j) % level] += a.coeffs[i] * b.coeffs[j];
        }
    }
    p.norm_square = x.norm_square * y.norm_square;
    return p;
}

bool sums_equal(const CyclotomicNumber& x, const CyclotomicNumber& y) {
    std::size_t level = to_size(lcm(Int(x.level), Int(y.level)));
    CyclotomicNumber a = lift_to_level(x, level), b = lift_to_level(y, level);
    IntPoly diff(level, Int(0));
    bool zero = true;
    for (std::size_t k = 0; k < level; ++k) {
        diff[k] = a.coeffs[k] - b.coeffs[k];
        if (diff[k] != 0) zero = false;
    }
    if (zero) return true;
    poly_divmod_monic(diff, cyclotomic_polynomial(level));
    return diff.empty();
}

bool cyclotomic_equal(const CyclotomicNumber& x, const CyclotomicNumber& y) {
    return x.norm_square == y.norm_square && sums_equal(x, y);
}

}  // namespace qtor
