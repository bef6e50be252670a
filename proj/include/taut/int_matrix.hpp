#pragma once

#include "taut/integer.hpp"

#include <cassert>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <utility>
#include <vector>

namespace taut {

/// Dense row-major matrix of arbitrary-precision integers. Zero-sized
/// dimensions are allowed and carry their shape (a 0x3 matrix is distinct
/// from a 3x0 one).
class IntMatrix {
public:
    IntMatrix() = default;

    IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols) {}

    IntMatrix(std::initializer_list<std::initializer_list<long long>> rows)
    {
        rows_ = rows.size();
        cols_ = rows_ ? rows.begin()->size() : 0;
        entries_.reserve(rows_ * cols_);
        for (const auto& row : rows) {
            if (row.size() != cols_) throw std::invalid_argument("ragged matrix literal");
            for (long long v : row) entries_.emplace_back(v);
        }
    }

    static IntMatrix identity(std::size_t n)
    {
        IntMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    static IntMatrix from_rows(const std::vector<Vector>& rows, std::size_t cols)
    {
        IntMatrix m(rows.size(), cols);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != cols) throw std::invalid_argument("ragged matrix rows");
            for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
        }
        return m;
    }

    static IntMatrix from_columns(const std::vector<Vector>& columns, std::size_t rows)
    {
        IntMatrix m(rows, columns.size());
        for (std::size_t j = 0; j < columns.size(); ++j) {
            if (columns[j].size() != rows) throw std::invalid_argument("ragged matrix columns");
            for (std::size_t i = 0; i < rows; ++i) m(i, j) = columns[j][i];
        }
        return m;
    }

    static IntMatrix diagonal(const Vector& entries)
    {
        IntMatrix m(entries.size(), entries.size());
        for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    Integer& operator()(std::size_t i, std::size_t j)
    {
        assert(i < rows_ && j < cols_);
        return entries_[i * cols_ + j];
    }
    const Integer& operator()(std::size_t i, std::size_t j) const
    {
        assert(i < rows_ && j < cols_);
        return entries_[i * cols_ + j];
    }

    Vector column(std::size_t j) const
    {
        Vector v(rows_);
        for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
        return v;
    }

    Vector row(std::size_t i) const
    {
        return Vector(entries_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                      entries_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
    }

    void set_column(std::size_t j, const Vector& v)
    {
        if (v.size() != rows_) throw std::invalid_argument("column length mismatch");
        for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
    }

    bool is_zero() const
    {
        for (const auto& e : entries_)
            if (e != 0) return false;
        return true;
    }

    bool is_diagonal() const
    {
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                if (i != j && (*this)(i, j) != 0) return false;
        return true;
    }

    IntMatrix transposed() const
    {
        IntMatrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    /// Rows [r0, r1) and columns [c0, c1).
    IntMatrix block(std::size_t r0, std::size_t r1, std::size_t c0, std::size_t c1) const
    {
        IntMatrix b(r1 - r0, c1 - c0);
        for (std::size_t i = r0; i < r1; ++i)
            for (std::size_t j = c0; j < c1; ++j) b(i - r0, j - c0) = (*this)(i, j);
        return b;
    }

    void set_block(std::size_t r0, std::size_t c0, const IntMatrix& b)
    {
        for (std::size_t i = 0; i < b.rows(); ++i)
            for (std::size_t j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
    }

    // Elementary operations used by the reductions.
    void swap_rows(std::size_t a, std::size_t b)
    {
        if (a == b) return;
        for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
    }
    void swap_cols(std::size_t a, std::size_t b)
    {
        if (a == b) return;
        for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
    }
    // row[target] += factor * row[source]
    void add_row_multiple(std::size_t target, std::size_t source, const Integer& factor)
    {
        if (factor == 0) return;
        for (std::size_t j = 0; j < cols_; ++j) {
            const Integer& s = (*this)(source, j);
            if (s != 0) (*this)(target, j) += factor * s;
        }
    }
    // col[target] += factor * col[source]
    void add_col_multiple(std::size_t target, std::size_t source, const Integer& factor)
    {
        if (factor == 0) return;
        for (std::size_t i = 0; i < rows_; ++i) {
            const Integer& s = (*this)(i, source);
            if (s != 0) (*this)(i, target) += factor * s;
        }
    }
    void negate_row(std::size_t i)
    {
        for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = -(*this)(i, j);
    }
    void negate_col(std::size_t j)
    {
        for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = -(*this)(i, j);
    }

    friend bool operator==(const IntMatrix& a, const IntMatrix& b)
    {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
    }

    friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b)
    {
        if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product shape mismatch");
        IntMatrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const Integer& aik = a(i, k);
                if (aik == 0) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) {
                    const Integer& bkj = b(k, j);
                    if (bkj != 0) c(i, j) += aik * bkj;
                }
            }
        return c;
    }

    friend Vector operator*(const IntMatrix& a, const Vector& x)
    {
        if (a.cols_ != x.size()) throw std::invalid_argument("matrix-vector shape mismatch");
        Vector y(a.rows_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k)
                if (x[k] != 0 && a(i, k) != 0) y[i] += a(i, k) * x[k];
        return y;
    }

    friend IntMatrix operator+(const IntMatrix& a, const IntMatrix& b)
    {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix sum shape mismatch");
        IntMatrix c = a;
        for (std::size_t k = 0; k < c.entries_.size(); ++k) c.entries_[k] += b.entries_[k];
        return c;
    }

    friend IntMatrix operator-(const IntMatrix& a, const IntMatrix& b)
    {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix difference shape mismatch");
        IntMatrix c = a;
        for (std::size_t k = 0; k < c.entries_.size(); ++k) c.entries_[k] -= b.entries_[k];
        return c;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Integer> entries_;
};

/// [a | b], both with the same row count.
inline IntMatrix hconcat(const IntMatrix& a, const IntMatrix& b)
{
    if (a.rows() != b.rows()) throw std::invalid_argument("hconcat row mismatch");
    IntMatrix c(a.rows(), a.cols() + b.cols());
    c.set_block(0, 0, a);
    c.set_block(0, a.cols(), b);
    return c;
}

/// [a ; b], both with the same column count.
inline IntMatrix vconcat(const IntMatrix& a, const IntMatrix& b)
{
    if (a.cols() != b.cols()) throw std::invalid_argument("vconcat column mismatch");
    IntMatrix c(a.rows() + b.rows(), a.cols());
    c.set_block(0, 0, a);
    c.set_block(a.rows(), 0, b);
    return c;
}

inline IntMatrix block_diagonal(const std::vector<IntMatrix>& blocks)
{
    std::size_t rows = 0, cols = 0;
    for (const auto& b : blocks) {
        rows += b.rows();
        cols += b.cols();
    }
    IntMatrix m(rows, cols);
    std::size_t r = 0, c = 0;
    for (const auto& b : blocks) {
        m.set_block(r, c, b);
        r += b.rows();
        c += b.cols();
    }
    return m;
}

/// Kronecker product a ⊗ b.
inline IntMatrix kronecker(const IntMatrix& a, const IntMatrix& b)
{
    IntMatrix m(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (a(i, j) == 0) continue;
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l) m(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
        }
    return m;
}

/// Determinant by fraction-free (Bareiss) elimination.
inline Integer determinant(IntMatrix m)
{
    if (m.rows() != m.cols()) throw std::invalid_argument("determinant of non-square matrix");
    const std::size_t n = m.rows();
    if (n == 0) return 1;
    Integer sign = 1, previous = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k) == 0) {
            std::size_t swap = k + 1;
            while (swap < n && m(swap, k) == 0) ++swap;
            if (swap == n) return 0;
            m.swap_rows(k, swap);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / previous;
        previous = m(k, k);
    }
    return sign * m(n - 1, n - 1);
}

} // namespace taut
