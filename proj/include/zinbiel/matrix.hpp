#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "zinbiel/errors.hpp"
#include "zinbiel/scalar.hpp"

namespace zinbiel {

/// Dense matrix over an exact field type K (K needs +,-,*,/ and == K{}).
template <class K>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), d_(rows * cols) {}
    Matrix(std::initializer_list<std::initializer_list<K>> init) {
        rows_ = init.size();
        cols_ = rows_ ? init.begin()->size() : 0;
        d_.reserve(rows_ * cols_);
        for (const auto& row : init) {
            if (row.size() != cols_) throw DimensionMismatch("ragged initializer");
            for (const auto& v : row) d_.push_back(v);
        }
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = K(1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    K& operator()(std::size_t i, std::size_t j) { return d_[i * cols_ + j]; }
    const K& operator()(std::size_t i, std::size_t j) const { return d_[i * cols_ + j]; }

    std::vector<K> row(std::size_t i) const {
        return std::vector<K>(d_.begin() + i * cols_, d_.begin() + (i + 1) * cols_);
    }

    void set_row(std::size_t i, const std::vector<K>& v) {
        if (v.size() != cols_) throw DimensionMismatch("row length mismatch");
        for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = v[j];
    }

    void append_row(const std::vector<K>& v) {
        if (rows_ == 0 && cols_ == 0) cols_ = v.size();
        if (v.size() != cols_) throw DimensionMismatch("row length mismatch");
        d_.insert(d_.end(), v.begin(), v.end());
        ++rows_;
    }

    friend bool operator==(const Matrix& x, const Matrix& y) {
        return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.d_ == y.d_;
    }
    friend bool operator!=(const Matrix& x, const Matrix& y) { return !(x == y); }

    Matrix operator*(const Matrix& o) const {
        if (cols_ != o.rows_) throw DimensionMismatch("matrix product shape mismatch");
        Matrix out(rows_, o.cols_);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t k = 0; k < cols_; ++k) {
                const K& a = (*this)(i, k);
                if (a == K{}) continue;
                for (std::size_t j = 0; j < o.cols_; ++j) {
                    out(i, j) += a * o(k, j);
                }
            }
        }
        return out;
    }

    /// In-place Gauss-Jordan reduction to reduced row-echelon form.
    /// Returns the rank; rows are left sorted with pivots strictly increasing
    /// and zero rows at the bottom.
    std::size_t rref() {
        std::size_t lead = 0;
        std::size_t r = 0;
        for (; r < rows_ && lead < cols_; ++lead) {
            std::size_t piv = r;
            while (piv < rows_ && (*this)(piv, lead) == K{}) ++piv;
            if (piv == rows_) continue;
            swap_rows(piv, r);
            K inv = K(1) / (*this)(r, lead);
            for (std::size_t j = lead; j < cols_; ++j) (*this)(r, j) = (*this)(r, j) * inv;
            for (std::size_t i = 0; i < rows_; ++i) {
                if (i == r) continue;
                K f = (*this)(i, lead);
                if (f == K{}) continue;
                for (std::size_t j = lead; j < cols_; ++j) {
                    (*this)(i, j) -= f * (*this)(r, j);
                }
            }
            ++r;
        }
        return r;
    }

    std::size_t rank() const {
        Matrix copy = *this;
        return copy.rref();
    }

    Matrix inverse() const {
        if (rows_ != cols_) throw DimensionMismatch("only square matrices invert");
        Matrix aug(rows_, 2 * cols_);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < cols_; ++j) aug(i, j) = (*this)(i, j);
            aug(i, cols_ + i) = K(1);
        }
        if (aug.rref() < rows_ || !aug.left_block_is_identity()) throw SingularMatrix();
        Matrix out(rows_, cols_);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < cols_; ++j) out(i, j) = aug(i, cols_ + j);
        }
        return out;
    }

    /// Basis of {x : x M = 0} as rows in reduced row-echelon form.
    Matrix left_kernel() const {
        // Reduce the transpose; free columns parametrize the kernel.
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        }
        std::size_t rk = t.rref();
        std::vector<std::size_t> pivot_col(rk);
        std::vector<bool> is_pivot(rows_, false);
        for (std::size_t r = 0; r < rk; ++r) {
            std::size_t c = 0;
            while (c < rows_ && t(r, c) == K{}) ++c;
            pivot_col[r] = c;
            is_pivot[c] = true;
        }
        Matrix out;
        for (std::size_t c = 0; c < rows_; ++c) {
            if (is_pivot[c]) continue;
            std::vector<K> v(rows_);
            v[c] = K(1);
            for (std::size_t r = 0; r < rk; ++r) {
                v[pivot_col[r]] = K{} - t(r, c);
            }
            out.append_row(v);
        }
        if (out.rows() == 0) out = Matrix(0, rows_);
        out.rref();
        return out;
    }

private:
    bool left_block_is_identity() const {
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < rows_; ++j) {
                if ((*this)(i, j) != ((i == j) ? K(1) : K{})) return false;
            }
        }
        return true;
    }

    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<K> d_;
};

using QMatrix = Matrix<Scalar>;

/// Canonical reduced row-echelon form plus rank, as a pure function.
template <class K>
std::pair<std::size_t, Matrix<K>> row_reduce(Matrix<K> m) {
    std::size_t rank = m.rref();
    return {rank, std::move(m)};
}

template <class K>
std::vector<K> vec_times_matrix(const std::vector<K>& x, const Matrix<K>& m) {
    if (x.size() != m.rows()) throw DimensionMismatch("vector/matrix shape mismatch");
    std::vector<K> out(m.cols());
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] == K{}) continue;
        for (std::size_t j = 0; j < m.cols(); ++j) out[j] += x[i] * m(i, j);
    }
    return out;
}

/// Linear subspace of Q^n held as its unique rref basis; equality of
/// subspaces is plain equality of these row matrices.
class Subspace {
public:
    Subspace() = default;

    /// Canonicalizes arbitrary spanning rows (zero rows dropped).
    static Subspace span(std::size_t ambient_dim, const QMatrix& spanning_rows) {
        QMatrix m = spanning_rows;
        if (m.rows() > 0 && m.cols() != ambient_dim) {
            throw DimensionMismatch("spanning rows do not live in the ambient space");
        }
        std::size_t rank = m.rref();
        QMatrix basis(0, ambient_dim);
        for (std::size_t i = 0; i < rank; ++i) basis.append_row(m.row(i));
        Subspace s;
        s.ambient_ = ambient_dim;
        s.basis_ = std::move(basis);
        return s;
    }

    static Subspace full(std::size_t n) { return span(n, QMatrix::identity(n)); }
    static Subspace zero(std::size_t n) { return span(n, QMatrix(0, n)); }

    std::size_t ambient_dim() const { return ambient_; }
    std::size_t dim() const { return basis_.rows(); }
    bool is_zero() const { return dim() == 0; }
    const QMatrix& basis() const { return basis_; }

    bool contains(const std::vector<Scalar>& v) const {
        std::vector<Scalar> w = reduce_against_basis(v);
        for (const Scalar& x : w) {
            if (!x.is_zero()) return false;
        }
        return true;
    }

    bool contains(const Subspace& other) const {
        for (std::size_t i = 0; i < other.dim(); ++i) {
            if (!contains(other.basis_.row(i))) return false;
        }
        return true;
    }

    friend bool operator==(const Subspace& x, const Subspace& y) {
        return x.ambient_ == y.ambient_ && x.basis_ == y.basis_;
    }
    friend bool operator!=(const Subspace& x, const Subspace& y) { return !(x == y); }

private:
    std::vector<Scalar> reduce_against_basis(std::vector<Scalar> v) const {
        for (std::size_t r = 0; r < basis_.rows(); ++r) {
            std::size_t c = 0;
            while (c < ambient_ && basis_(r, c).is_zero()) ++c;
            if (c == ambient_) continue;
            if (!v[c].is_zero()) {
                Scalar f = v[c];
                for (std::size_t j = c; j < ambient_; ++j) v[j] -= f * basis_(r, j);
            }
        }
        return v;
    }

    std::size_t ambient_ = 0;
    QMatrix basis_;
};

} // namespace zinbiel
