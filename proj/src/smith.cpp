#include "qtor/smith.hpp"

#include <algorithm>

namespace qtor {

std::vector<Int> SmithResult::diagonal() const {
    std::size_t n = std::min(d.rows(), d.cols());
    std::vector<Int> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = d.at(i, i);
    return out;
}

namespace {

// Swaps the minimizing entry of the block [t.., t..] into (t, t). Minimal
// absolute value, ties by lowest row then lowest column. False if the block
// is zero.
bool select_pivot(SmithResult& r, std::size_t t) {
    std::size_t m = r.d.rows(), n = r.d.cols();
    std::size_t pi = 0, pj = 0;
    bool found = false;
    for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j) {
            const Int& x = r.d.at(i, j);
            if (x == 0) continue;
            if (!found || abs(x) < abs(r.d.at(pi, pj))) {
                pi = i;
                pj = j;
                found = true;
            }
        }
    if (!found) return false;
    r.d.swap_rows(t, pi);
    r.u.swap_rows(t, pi);
    r.d.swap_cols(t, pj);
    r.v.swap_cols(t, pj);
    return true;
}

}  // namespace

SmithResult smith_normal_form(const IntMat& a) {
    SmithResult r;
    r.d = a;
    r.u = IntMat::identity(a.rows());
    r.v = IntMat::identity(a.cols());
    std::size_t m = a.rows(), n = a.cols();
    for (std::size_t t = 0; t < std::min(m, n); ++t) {
        if (!select_pivot(r, t)) break;
        for (;;) {
            // reduce column t by row operations, row t by column operations;
            // truncated quotients leave remainders smaller than the pivot
            bool dirty = false;
            for (std::size_t i = t + 1; i < m; ++i) {
                const Int& x = r.d.at(i, t);
                if (x == 0) continue;
                Int q = x / r.d.at(t, t);
                if (q != 0) {
                    r.d.addmul_row(i, t, -q);
                    r.u.addmul_row(i, t, -q);
                }
                if (r.d.at(i, t) != 0) dirty = true;
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                const Int& x = r.d.at(t, j);
                if (x == 0) continue;
                Int q = x / r.d.at(t, t);
                if (q != 0) {
                    r.d.addmul_col(j, t, -q);
                    r.v.addmul_col(j, t, -q);
                }
                if (r.d.at(t, j) != 0) dirty = true;
            }
            if (dirty) {
                select_pivot(r, t);
                continue;
            }
            // the pivot must divide every remaining entry before moving on
            const Int& p = r.d.at(t, t);
            bool divisible = true;
            for (std::size_t i = t + 1; i < m && divisible; ++i)
                for (std::size_t j = t + 1; j < n; ++j)
                    if (r.d.at(i, j) % p != 0) {
                        r.d.addmul_row(t, i, 1);
                        r.u.addmul_row(t, i, 1);
                        divisible = false;
                        break;
                    }
            if (divisible) break;
        }
    }
    for (std::size_t i = 0; i < std::min(m, n); ++i) {
        if (r.d.at(i, i) < 0) {
            r.d.negate_row(i);
            r.u.negate_row(i);
        }
        if (r.d.at(i, i) != 0) r.rank = i + 1;
    }
    return r;
}

std::optional<AffineLattice> solve_linear(const IntMat& a, const std::vector<Int>& b) {
    if (b.size() != a.rows()) throw invalid_input("right-hand side length mismatch");
    SmithResult s = smith_normal_form(a);
    std::vector<Int> c = s.u.mul(b);
    std::size_t n = a.cols();
    std::vector<Int> y(n);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        Int d = (i < std::min(a.rows(), n)) ? s.d.at(i, i) : Int(0);
        if (d != 0) {
            if (c[i] % d != 0) return std::nullopt;
            y[i] = c[i] / d;
        } else if (c[i] != 0) {
            return std::nullopt;
        }
    }
    AffineLattice out;
    out.particular = s.v.mul(y);
    out.homogeneous = s.v.columns(s.rank, n - s.rank);
    return out;
}

std::optional<CongruenceSolution> solve_congruence_system(const IntMat& a,
                                                          const std::vector<Int>& b,
                                                          const std::vector<Int>& moduli) {
    if (moduli.size() != a.rows()) throw invalid_input("moduli length mismatch");
    for (const Int& m : moduli)
        if (m < 0) throw invalid_input("negative modulus");
    std::size_t n = a.cols();
    std::vector<std::size_t> slack;
    for (std::size_t i = 0; i < moduli.size(); ++i)
        if (moduli[i] > 0) slack.push_back(i);
    IntMat ext(a.rows(), n + slack.size());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < n; ++j) ext.at(i, j) = a.at(i, j);
    for (std::size_t k = 0; k < slack.size(); ++k) ext.at(slack[k], n + k) = moduli[slack[k]];
    auto sol = solve_linear(ext, b);
    if (!sol) return std::nullopt;
    CongruenceSolution out;
    out.particular.assign(sol->particular.begin(), sol->particular.begin() + n);
    out.homogeneous = lattice_column_basis(sol->homogeneous.top_left(n, sol->homogeneous.cols()));
    out.particular = reduce_mod_lattice(out.particular, out.homogeneous);
    return out;
}

std::optional<std::vector<Int>> solve_congruences(const IntMat& a, const std::vector<Int>& b,
                                                  const std::vector<Int>& moduli) {
    auto sol = solve_congruence_system(a, b, moduli);
    if (!sol) return std::nullopt;
    return sol->particular;
}

namespace {

// Column echelon form over Z: pivot rows strictly increase, pivots positive,
// columns past the rank are zero. Returns the echelon matrix and pivot rows.
std::pair<IntMat, std::vector<std::size_t>> column_echelon(const IntMat& span) {
    IntMat h = span;
    std::vector<std::size_t> pivots;
    std::size_t cur = 0;
    for (std::size_t row = 0; row < h.rows() && cur < h.cols(); ++row) {
        for (;;) {
            std::size_t best = h.cols();
            for (std::size_t j = cur; j < h.cols(); ++j) {
                if (h.at(row, j) == 0) continue;
                if (best == h.cols() || abs(h.at(row, j)) < abs(h.at(row, best))) best = j;
            }
            if (best == h.cols()) break;
            h.swap_cols(cur, best);
            bool clean = true;
            for (std::size_t j = cur + 1; j < h.cols(); ++j) {
                if (h.at(row, j) == 0) continue;
                Int q = h.at(row, j) / h.at(row, cur);
                if (q != 0) h.addmul_col(j, cur, -q);
                if (h.at(row, j) != 0) clean = false;
            }
            if (clean) {
                if (h.at(row, cur) < 0)
                    for (std::size_t i = 0; i < h.rows(); ++i) h.at(i, cur) = -h.at(i, cur);
                pivots.push_back(row);
                ++cur;
                break;
            }
        }
    }
    return {h.columns(0, cur), pivots};
}

}  // namespace

IntMat lattice_column_basis(const IntMat& span) { return column_echelon(span).first; }

std::vector<Int> reduce_mod_lattice(const std::vector<Int>& v, const IntMat& span) {
    if (span.cols() == 0) return v;
    if (span.rows() != v.size()) throw invalid_input("lattice dimension mismatch");
    auto [h, pivots] = column_echelon(span);
    std::vector<Int> r = v;
    for (std::size_t j = 0; j < pivots.size(); ++j) {
        std::size_t p = pivots[j];
        Int q = floor_div(r[p], h.at(p, j));
        if (q == 0) continue;
        for (std::size_t i = 0; i < r.size(); ++i) r[i] -= q * h.at(i, j);
    }
    return r;
}

}  // namespace qtor
