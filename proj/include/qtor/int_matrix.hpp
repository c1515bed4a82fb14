#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

#include "qtor/numeric.hpp"

namespace qtor {

// Dense exact integer matrix, row major.
class IntMat {
public:
    IntMat() = default;
    IntMat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
    IntMat(std::initializer_list<std::initializer_list<Int>> rows);

    static IntMat identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Int& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Int& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    bool is_symmetric() const;
    bool is_zero() const;

    IntMat transpose() const;
    IntMat operator*(const IntMat& o) const;
    IntMat operator-() const;
    bool operator==(const IntMat& o) const = default;

    std::vector<Int> mul(const std::vector<Int>& v) const;        // A v
    std::vector<Int> mul_left(const std::vector<Int>& v) const;   // v^T A, as a vector

    std::vector<Int> column(std::size_t j) const;
    void set_column(std::size_t j, const std::vector<Int>& v);
    IntMat columns(std::size_t first, std::size_t count) const;
    IntMat top_left(std::size_t r, std::size_t c) const;

    void swap_rows(std::size_t i, std::size_t j);
    void swap_cols(std::size_t i, std::size_t j);
    void addmul_row(std::size_t dst, std::size_t src, const Int& k);  // row dst += k * row src
    void addmul_col(std::size_t dst, std::size_t src, const Int& k);
    void negate_row(std::size_t i);

    // exact determinant, square matrices (fraction-free elimination)
    Int determinant() const;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Int> a_;
};

IntMat hstack(const IntMat& a, const IntMat& b);
IntMat block_diag(const IntMat& a, const IntMat& b);
IntMat from_columns(std::size_t rows, const std::vector<std::vector<Int>>& cols);

// Dense exact rational matrix, row major.
class RatMat {
public:
    RatMat() = default;
    RatMat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
    static RatMat from_int(const IntMat& m);
    static RatMat identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Rational& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Rational& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    RatMat operator*(const RatMat& o) const;
    std::vector<Rational> mul(const std::vector<Rational>& v) const;
    std::vector<Rational> column(std::size_t j) const;
    void set_column(std::size_t j, const std::vector<Rational>& v);
    bool operator==(const RatMat& o) const = default;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Rational> a_;
};

// exact inverse; throws invalid_input when singular
RatMat rat_inverse(const RatMat& m);

// integral inverse of a matrix with determinant +-1
IntMat inverse_unimodular(const IntMat& u);

std::vector<Rational> to_rational(const std::vector<Int>& v);

}  // namespace qtor
