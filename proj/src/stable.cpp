#include "qtor/stable.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

#include "qtor/discriminant.hpp"
#include "qtor/errors.hpp"
#include "qtor/smith.hpp"

namespace qtor {
namespace {

Int dot(const std::vector<Int>& x, const std::vector<Int>& y) {
    Int s = 0;
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    return s;
}

// a prefix extends to a unimodular matrix iff its invariant factors are all 1
bool prefix_primitive(const IntMat& prefix) {
    SmithResult s = smith_normal_form(prefix);
    if (s.rank != prefix.cols()) return false;
    for (std::size_t i = 0; i < s.rank; ++i)
        if (s.d.at(i, i) != 1) return false;
    return true;
}

// odometer step through [-bound, bound]^n in lexicographic order
bool next_vector(std::vector<Int>& v, const Int& bound) {
    for (std::size_t i = v.size(); i-- > 0;) {
        if (v[i] < bound) {
            ++v[i];
            std::fill(v.begin() + static_cast<std::ptrdiff_t>(i) + 1, v.end(), -bound);
            return true;
        }
    }
    return false;
}

}  // namespace

Int signature(const BilinearLattice& f) {
    RatMat a = RatMat::from_int(f.gram);
    const std::size_t n = a.rows();
    auto add_sym = [&](std::size_t dst, std::size_t src, const Rational& m) {
        for (std::size_t j = 0; j < n; ++j) a.at(dst, j) += m * a.at(src, j);
        for (std::size_t i = 0; i < n; ++i) a.at(i, dst) += m * a.at(i, src);
    };
    auto swap_sym = [&](std::size_t i, std::size_t j) {
        for (std::size_t c = 0; c < n; ++c) std::swap(a.at(i, c), a.at(j, c));
        for (std::size_t r = 0; r < n; ++r) std::swap(a.at(r, i), a.at(r, j));
    };
    Int sig = 0;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = n;
        for (std::size_t i = k; i < n && piv == n; ++i)
            if (a.at(i, i) != 0) piv = i;
        if (piv == n) {
            std::size_t r = n, c = n;
            for (std::size_t i = k; i < n && r == n; ++i)
                for (std::size_t j = i + 1; j < n && r == n; ++j)
                    if (a.at(i, j) != 0) {
                        r = i;
                        c = j;
                    }
            if (r == n) break;  // remaining block vanishes
            add_sym(r, c, 1);   // diagonal entry becomes twice the off-diagonal one
            piv = r;
        }
        if (piv != k) swap_sym(piv, k);
        sig += a.at(k, k) > 0 ? 1 : -1;
        for (std::size_t i = k + 1; i < n; ++i) {
            if (a.at(i, k) == 0) continue;
            add_sym(i, k, -a.at(i, k) / a.at(k, k));
        }
    }
    return sig;
}

Triple stabilize(const Triple& t, const std::vector<Int>& signs) {
    const std::size_t m = signs.size();
    IntMat unit(m, m);
    for (std::size_t i = 0; i < m; ++i) {
        if (signs[i] != 1 && signs[i] != -1)
            throw invalid_input("stabilizer signs must be +1 or -1");
        unit.at(i, i) = signs[i];
    }
    CharacteristicForm ones{std::vector<Int>(m, Int(1))};
    return orthogonal_sum(t, make_triple(make_lattice(std::move(unit)), std::move(ones)));
}

bool is_triple_isomorphism(const Triple& a, const Triple& b, const IntMat& p) {
    const std::size_t n = a.lattice.rank();
    if (b.lattice.rank() != n || p.rows() != n || p.cols() != n) return false;
    if (n == 0) return true;
    Int det = p.determinant();
    if (det != 1 && det != -1) return false;
    if (p.transpose() * b.lattice.gram * p != a.lattice.gram) return false;
    std::vector<Int> diff = a.form.coeffs;
    std::vector<Int> pulled = p.transpose().mul(b.form.coeffs);
    IntMat doubled = a.lattice.gram;
    for (std::size_t i = 0; i < n; ++i) {
        diff[i] -= pulled[i];
        for (std::size_t j = 0; j < n; ++j) doubled.at(i, j) *= 2;
    }
    return solve_linear(doubled, diff).has_value();
}

std::optional<IntMat> search_bounded_isometry(const Triple& a, const Triple& b,
                                              const Int& entry_bound) {
    if (entry_bound < 0) throw invalid_input("entry bound must be nonnegative");
    const std::size_t n = a.lattice.rank();
    if (b.lattice.rank() != n) return std::nullopt;
    if (n == 0) return IntMat(0, 0);
    const IntMat& fa = a.lattice.gram;
    const IntMat& fb = b.lattice.gram;
    IntMat p(n, n);
    std::optional<IntMat> found;
    auto place = [&](auto&& self, std::size_t j) -> bool {
        std::vector<Int> v(n, -entry_bound);
        while (true) {
            std::vector<Int> fbv = fb.mul(v);
            bool ok = dot(v, fbv) == fa.at(j, j);
            for (std::size_t i = 0; ok && i < j; ++i) ok = dot(p.column(i), fbv) == fa.at(i, j);
            if (ok) {
                p.set_column(j, v);
                if (prefix_primitive(p.columns(0, j + 1))) {
                    if (j + 1 == n) {
                        if (is_triple_isomorphism(a, b, p)) {
                            found = p;
                            return true;
                        }
                    } else if (self(self, j + 1)) {
                        return true;
                    }
                }
            }
            if (!next_vector(v, entry_bound)) return false;
        }
    };
    place(place, 0);
    return found;
}

StabilizationCertificate stably_equivalent(const Triple& a, const Triple& b,
                                           const ClassifyOptions& opts) {
    StructuredQuadratic qa = discriminant_quadratic(a);
    StructuredQuadratic qb = discriminant_quadratic(b);
    IsoDecision dec = decide_isomorphic(qa, qb, opts);
    StabilizationCertificate cert;
    if (!dec.isomorphic()) {
        cert.reason = dec.obstruction;
        return cert;
    }
    cert.verdict = true;
    Int dr = Int(b.lattice.rank()) - Int(a.lattice.rank());
    Int ds = signature(b.lattice) - signature(a.lattice);
    if ((dr - ds) % 2 != 0) throw std::logic_error("rank and signature parity mismatch");
    Int plus = (dr + ds) / 2;   // surplus of +1 summands needed on the left
    Int minus = (dr - ds) / 2;  // surplus of -1 summands needed on the left
    for (Int i = 0; i < plus; ++i) cert.left_signs.push_back(1);
    for (Int i = plus; i < 0; ++i) cert.right_signs.push_back(1);
    for (Int i = 0; i < minus; ++i) cert.left_signs.push_back(-1);
    for (Int i = minus; i < 0; ++i) cert.right_signs.push_back(-1);
    return cert;
}

}  // namespace qtor
