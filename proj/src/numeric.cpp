#include "qtor/numeric.hpp"

#include <boost/multiprecision/integer.hpp>
#include <cctype>
#include <limits>

namespace qtor {

Int gcd(const Int& a, const Int& b) { return boost::multiprecision::gcd(a, b); }

Int lcm(const Int& a, const Int& b) { return boost::multiprecision::lcm(a, b); }

Int content(const std::vector<Int>& v) {
    Int g = 0;
    for (const Int& x : v) g = gcd(g, x);
    return g;
}

Int choose2(const Int& x) { return x * (x - 1) / 2; }

Int numer(const Rational& r) { return boost::multiprecision::numerator(r); }

Int denom(const Rational& r) { return boost::multiprecision::denominator(r); }

Int floor_div(const Int& p, const Int& q) {
    Int r = p % q;
    if (r < 0) r += q;
    return (p - r) / q;
}

Rational mod1(const Rational& r) {
    return r - Rational(floor_div(numer(r), denom(r)));
}

std::size_t to_size(const Int& n) {
    if (n < 0 || n > Int(std::numeric_limits<long long>::max()))
        throw size_limit_error("value out of range for a machine-size count: " + n.str());
    return static_cast<std::size_t>(n.convert_to<long long>());
}

QmodZ::QmodZ(const Int& num, const Int& den) {
    if (den == 0) throw invalid_input("zero denominator in Q/Z value");
    rep_ = mod1(Rational(num, den));
}

namespace {

bool is_int_token(const std::string& t) {
    if (t.empty()) return false;
    std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
    return true;
}

}  // namespace

Rational parse_rational(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) {
        if (!is_int_token(s)) throw invalid_input("malformed rational '" + s + "'");
        return Rational(Int(s));
    }
    std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    if (!is_int_token(num) || !is_int_token(den))
        throw invalid_input("malformed rational '" + s + "'");
    Int d(den);
    if (d == 0) throw invalid_input("zero denominator in rational '" + s + "'");
    return Rational(Int(num), d);
}

std::string format_rational(const Rational& r) {
    return numer(r).str() + "/" + denom(r).str();
}

}  // namespace qtor
