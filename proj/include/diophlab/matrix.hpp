#pragma once

#include <cstddef>
#include <vector>

#include "diophlab/rational.hpp"

namespace diophlab {

// Dense matrix over an exact scalar type. Row-major storage; values are
// immutable in spirit: operations return new matrices.
template <typename T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, T fill = T(0))
        : rows_(rows), cols_(cols), e_(rows * cols, fill) {}
    Matrix(std::size_t rows, std::size_t cols, std::vector<T> entries)
        : rows_(rows), cols_(cols), e_(std::move(entries)) {
        if (e_.size() != rows_ * cols_) throw DimMismatch("entry count mismatch");
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    T& operator()(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }

    const std::vector<T>& entries() const { return e_; }

    Matrix transpose() const {
        Matrix m(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
        return m;
    }

    Matrix operator*(const Matrix& o) const {
        if (cols_ != o.rows_) throw DimMismatch("matrix product shape");
        Matrix m(rows_, o.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const T& a = (*this)(i, k);
                if (a == 0) continue;
                for (std::size_t j = 0; j < o.cols_; ++j) m(i, j) += a * o(k, j);
            }
        return m;
    }

    Matrix operator+(const Matrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw DimMismatch("matrix sum shape");
        Matrix m = *this;
        for (std::size_t i = 0; i < e_.size(); ++i) m.e_[i] += o.e_[i];
        return m;
    }

    Matrix operator-() const {
        Matrix m = *this;
        for (auto& x : m.e_) x = -x;
        return m;
    }

    Matrix operator-(const Matrix& o) const { return *this + (-o); }

    bool operator==(const Matrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
    }

    std::vector<T> row(std::size_t i) const {
        return std::vector<T>(e_.begin() + i * cols_, e_.begin() + (i + 1) * cols_);
    }
    std::vector<T> col(std::size_t j) const {
        std::vector<T> v(rows_);
        for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
        return v;
    }

    std::vector<T> apply(const std::vector<T>& v) const {
        if (v.size() != cols_) throw DimMismatch("matrix-vector shape");
        std::vector<T> out(rows_, T(0));
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * v[j];
        return out;
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<T> e_;
};

using RatMatrix = Matrix<Rational>;
using IntMatrix = Matrix<Integer>;

RatMatrix to_rational(const IntMatrix& m);
// Throws if any entry has a denominator != 1.
IntMatrix to_integer(const RatMatrix& m);

// Horizontal concatenation (A|B).
template <typename T>
Matrix<T> hcat(const Matrix<T>& a, const Matrix<T>& b) {
    if (a.rows() != b.rows()) throw DimMismatch("hcat row mismatch");
    Matrix<T> m(a.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
        for (std::size_t j = 0; j < b.cols(); ++j) m(i, a.cols() + j) = b(i, j);
    }
    return m;
}

template <typename T>
Matrix<T> vcat(const Matrix<T>& a, const Matrix<T>& b) {
    if (a.cols() != b.cols()) throw DimMismatch("vcat column mismatch");
    Matrix<T> m(a.rows() + b.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) m(a.rows() + i, j) = b(i, j);
    return m;
}

// Exact rank over the rationals (fraction-free elimination).
std::size_t rank_exact(const RatMatrix& m);

// Reduced row echelon form in place; returns the pivot columns.
std::vector<std::size_t> rref_in_place(RatMatrix& a);

// Exact determinant via Bareiss fraction-free elimination.
Rational det_exact(const RatMatrix& m);

// Basis of { v : M v = 0 }. Vectors are scaled to coprime integer entries
// with the first nonzero entry positive; ordered by free-column pivot order.
std::vector<IntVector> nullspace_basis(const RatMatrix& m);

// Exact inverse; throws RankDeficient if singular.
RatMatrix inverse_exact(const RatMatrix& m);

// Row-style Hermite normal form of an integer matrix: the canonical
// representative of the left GL(Z) orbit. Zero rows (if any) sink to the
// bottom; pivots are positive and entries above each pivot are reduced
// into [0, pivot).
IntMatrix hnf_rows(const IntMatrix& m);

// Divides an integer vector by the gcd of its entries and flips signs so
// the first nonzero entry is positive. Zero vectors pass through.
IntVector primitive_normalize(IntVector v);

// Clears denominators: v * lcm(dens), then primitive_normalize.
IntVector to_coprime_integer(const RatVector& v);

} // namespace diophlab
