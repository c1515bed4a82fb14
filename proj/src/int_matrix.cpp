#include "qtor/int_matrix.hpp"

namespace qtor {

IntMat::IntMat(std::initializer_list<std::initializer_list<Int>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    a_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) throw invalid_input("ragged matrix literal");
        for (const Int& x : r) a_.push_back(x);
    }
}

IntMat IntMat::identity(std::size_t n) {
    IntMat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

bool IntMat::is_symmetric() const {
    if (rows_ != cols_) return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = i + 1; j < cols_; ++j)
            if (at(i, j) != at(j, i)) return false;
    return true;
}

bool IntMat::is_zero() const {
    for (const Int& x : a_)
        if (x != 0) return false;
    return true;
}

IntMat IntMat::transpose() const {
    IntMat t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
}

IntMat IntMat::operator*(const IntMat& o) const {
    if (cols_ != o.rows_) throw invalid_input("matrix product shape mismatch");
    IntMat p(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Int& x = at(i, k);
            if (x == 0) continue;
            for (std::size_t j = 0; j < o.cols_; ++j) p.at(i, j) += x * o.at(k, j);
        }
    return p;
}

IntMat IntMat::operator-() const {
    IntMat m = *this;
    for (Int& x : m.a_) x = -x;
    return m;
}

std::vector<Int> IntMat::mul(const std::vector<Int>& v) const {
    if (v.size() != cols_) throw invalid_input("matrix-vector shape mismatch");
    std::vector<Int> r(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r[i] += at(i, j) * v[j];
    return r;
}

std::vector<Int> IntMat::mul_left(const std::vector<Int>& v) const {
    if (v.size() != rows_) throw invalid_input("vector-matrix shape mismatch");
    std::vector<Int> r(cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r[j] += v[i] * at(i, j);
    return r;
}

std::vector<Int> IntMat::column(std::size_t j) const {
    std::vector<Int> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = at(i, j);
    return c;
}

void IntMat::set_column(std::size_t j, const std::vector<Int>& v) {
    for (std::size_t i = 0; i < rows_; ++i) at(i, j) = v[i];
}

IntMat IntMat::columns(std::size_t first, std::size_t count) const {
    IntMat m(rows_, count);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < count; ++j) m.at(i, j) = at(i, first + j);
    return m;
}

IntMat IntMat::top_left(std::size_t r, std::size_t c) const {
    IntMat m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m.at(i, j) = at(i, j);
    return m;
}

void IntMat::swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t k = 0; k < cols_; ++k) std::swap(at(i, k), at(j, k));
}

void IntMat::swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t k = 0; k < rows_; ++k) std::swap(at(k, i), at(k, j));
}

void IntMat::addmul_row(std::size_t dst, std::size_t src, const Int& k) {
    for (std::size_t j = 0; j < cols_; ++j) at(dst, j) += k * at(src, j);
}

void IntMat::addmul_col(std::size_t dst, std::size_t src, const Int& k) {
    for (std::size_t i = 0; i < rows_; ++i) at(i, dst) += k * at(i, src);
}

void IntMat::negate_row(std::size_t i) {
    for (std::size_t j = 0; j < cols_; ++j) at(i, j) = -at(i, j);
}

Int IntMat::determinant() const {
    if (rows_ != cols_) throw invalid_input("determinant of a non-square matrix");
    std::size_t n = rows_;
    if (n == 0) return 1;
    // Bareiss fraction-free elimination
    IntMat m = *this;
    Int sign = 1, prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m.at(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && m.at(p, k) == 0) ++p;
            if (p == n) return 0;
            m.swap_rows(k, p);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                m.at(i, j) = (m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j)) / prev;
        prev = m.at(k, k);
    }
    return sign * m.at(n - 1, n - 1);
}

IntMat hstack(const IntMat& a, const IntMat& b) {
    if (a.rows() != b.rows()) throw invalid_input("hstack row mismatch");
    IntMat m(a.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) m.at(i, j) = a.at(i, j);
        for (std::size_t j = 0; j < b.cols(); ++j) m.at(i, a.cols() + j) = b.at(i, j);
    }
    return m;
}

IntMat block_diag(const IntMat& a, const IntMat& b) {
    IntMat m(a.rows() + b.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) m.at(i, j) = a.at(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) m.at(a.rows() + i, a.cols() + j) = b.at(i, j);
    return m;
}

IntMat from_columns(std::size_t rows, const std::vector<std::vector<Int>>& cols) {
    IntMat m(rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
        if (cols[j].size() != rows) throw invalid_input("column length mismatch");
        m.set_column(j, cols[j]);
    }
    return m;
}

RatMat RatMat::from_int(const IntMat& m) {
    RatMat r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r.at(i, j) = Rational(m.at(i, j));
    return r;
}

RatMat RatMat::identity(std::size_t n) {
    RatMat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

RatMat RatMat::operator*(const RatMat& o) const {
    if (cols_ != o.rows_) throw invalid_input("matrix product shape mismatch");
    RatMat p(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Rational& x = at(i, k);
            if (x == 0) continue;
            for (std::size_t j = 0; j < o.cols_; ++j) p.at(i, j) += x * o.at(k, j);
        }
    return p;
}

std::vector<Rational> RatMat::mul(const std::vector<Rational>& v) const {
    if (v.size() != cols_) throw invalid_input("matrix-vector shape mismatch");
    std::vector<Rational> r(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r[i] += at(i, j) * v[j];
    return r;
}

std::vector<Rational> RatMat::column(std::size_t j) const {
    std::vector<Rational> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = at(i, j);
    return c;
}

void RatMat::set_column(std::size_t j, const std::vector<Rational>& v) {
    for (std::size_t i = 0; i < rows_; ++i) at(i, j) = v[i];
}

RatMat rat_inverse(const RatMat& m) {
    if (m.rows() != m.cols()) throw invalid_input("inverse of a non-square matrix");
    std::size_t n = m.rows();
    RatMat a = m, inv = RatMat::identity(n);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        while (p < n && a.at(p, k) == 0) ++p;
        if (p == n) throw invalid_input("singular matrix");
        for (std::size_t j = 0; j < n; ++j) {
            std::swap(a.at(k, j), a.at(p, j));
            std::swap(inv.at(k, j), inv.at(p, j));
        }
        Rational piv = a.at(k, k);
        for (std::size_t j = 0; j < n; ++j) {
            a.at(k, j) /= piv;
            inv.at(k, j) /= piv;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k || a.at(i, k) == 0) continue;
            Rational f = a.at(i, k);
            for (std::size_t j = 0; j < n; ++j) {
                a.at(i, j) -= f * a.at(k, j);
                inv.at(i, j) -= f * inv.at(k, j);
            }
        }
    }
    return inv;
}

IntMat inverse_unimodular(const IntMat& u) {
    RatMat inv = rat_inverse(RatMat::from_int(u));
    IntMat r(u.rows(), u.cols());
    for (std::size_t i = 0; i < u.rows(); ++i)
        for (std::size_t j = 0; j < u.cols(); ++j) {
            const Rational& x = inv.at(i, j);
            if (denom(x) != 1) throw invalid_input("matrix is not unimodular");
            r.at(i, j) = numer(x);
        }
    return r;
}

std::vector<Rational> to_rational(const std::vector<Int>& v) {
    std::vector<Rational> r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = Rational(v[i]);
    return r;
}

}  // namespace qtor
