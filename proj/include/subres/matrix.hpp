#pragma once

#include "subres/rational.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

namespace subres {

/// Dense row-major matrix over a commutative ring T.
template <class T>
struct Matrix {
    std::size_t rows = 0, cols = 0;
    std::vector<T> a;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, T()) {}
    Matrix(std::size_t r, std::size_t c, const T& fill) : rows(r), cols(c), a(r * c, fill) {}

    static Matrix identity(std::size_t n, const T& one = T(1), const T& zero = T()) {
        Matrix m(n, n, zero);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = one;
        return m;
    }

    T& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

    bool is_square() const { return rows == cols; }

    Matrix operator+(const Matrix& o) const {
        check_same_shape(o);
        Matrix r = *this;
        for (std::size_t i = 0; i < a.size(); ++i) r.a[i] = r.a[i] + o.a[i];
        return r;
    }

    Matrix operator-(const Matrix& o) const {
        check_same_shape(o);
        Matrix r = *this;
        for (std::size_t i = 0; i < a.size(); ++i) r.a[i] = r.a[i] - o.a[i];
        return r;
    }

    Matrix operator*(const Matrix& o) const {
        if (cols != o.rows) throw std::invalid_argument("Matrix product: shape mismatch");
        Matrix r(rows, o.cols);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t k = 0; k < cols; ++k) {
                const T& v = (*this)(i, k);
                if (v == T()) continue;
                for (std::size_t j = 0; j < o.cols; ++j) r(i, j) = r(i, j) + v * o(k, j);
            }
        return r;
    }

    std::vector<T> apply(const std::vector<T>& v) const {
        if (v.size() != cols) throw std::invalid_argument("Matrix apply: shape mismatch");
        std::vector<T> r(rows, T());
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) r[i] = r[i] + (*this)(i, j) * v[j];
        return r;
    }

    Matrix transpose() const {
        Matrix r(cols, rows);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) r(j, i) = (*this)(i, j);
        return r;
    }

    bool is_zero() const {
        for (const auto& v : a)
            if (!(v == T())) return false;
        return true;
    }

    friend bool operator==(const Matrix& x, const Matrix& y) {
        return x.rows == y.rows && x.cols == y.cols && x.a == y.a;
    }

   private:
    void check_same_shape(const Matrix& o) const {
        if (rows != o.rows || cols != o.cols) throw std::invalid_argument("Matrix: shape mismatch");
    }
};

template <class T>
Matrix<T> matrix_scaled(const Matrix<T>& m, const T& c) {
    Matrix<T> r = m;
    for (auto& v : r.a) v = v * c;
    return r;
}

/// Gauss-Jordan inverse over an exact field (T = Rational). Returns nullopt
/// if singular.
inline std::optional<Matrix<Rational>> matrix_inverse(const Matrix<Rational>& m) {
    if (!m.is_square()) throw std::invalid_argument("matrix_inverse: not square");
    const std::size_t n = m.rows;
    Matrix<Rational> a = m;
    Matrix<Rational> inv = Matrix<Rational>::identity(n);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && a(pivot, col) == 0) ++pivot;
        if (pivot == n) return std::nullopt;
        if (pivot != col)
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(a.a[pivot * n + j], a.a[col * n + j]);
                std::swap(inv.a[pivot * n + j], inv.a[col * n + j]);
            }
        Rational d = a(col, col);
        for (std::size_t j = 0; j < n; ++j) {
            a(col, j) /= d;
            inv(col, j) /= d;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == col || a(i, col) == 0) continue;
            Rational f = a(i, col);
            for (std::size_t j = 0; j < n; ++j) {
                a(i, j) -= f * a(col, j);
                inv(i, j) -= f * inv(col, j);
            }
        }
    }
    return inv;
}

/// Row-reduce in place; returns rank. Columns are processed left to right.
inline std::size_t matrix_row_reduce(Matrix<Rational>& a) {
    std::size_t rank = 0;
    for (std::size_t col = 0; col < a.cols && rank < a.rows; ++col) {
        std::size_t pivot = rank;
        while (pivot < a.rows && a(pivot, col) == 0) ++pivot;
        if (pivot == a.rows) continue;
        if (pivot != rank)
            for (std::size_t j = 0; j < a.cols; ++j) std::swap(a.a[pivot * a.cols + j], a.a[rank * a.cols + j]);
        Rational d = a(rank, col);
        for (std::size_t j = 0; j < a.cols; ++j) a(rank, j) /= d;
        for (std::size_t i = 0; i < a.rows; ++i) {
            if (i == rank || a(i, col) == 0) continue;
            Rational f = a(i, col);
            for (std::size_t j = 0; j < a.cols; ++j) a(i, j) -= f * a(rank, j);
        }
        ++rank;
    }
    return rank;
}

inline std::size_t matrix_rank(Matrix<Rational> a) { return matrix_row_reduce(a); }

/// Solve A x = b exactly. Returns nullopt if inconsistent; for underdetermined
/// systems returns one solution (free variables set to zero).
inline std::optional<std::vector<Rational>> matrix_solve(const Matrix<Rational>& A,
                                                         const std::vector<Rational>& b) {
    if (A.rows != b.size()) throw std::invalid_argument("matrix_solve: shape mismatch");
    Matrix<Rational> aug(A.rows, A.cols + 1);
    for (std::size_t i = 0; i < A.rows; ++i) {
        for (std::size_t j = 0; j < A.cols; ++j) aug(i, j) = A(i, j);
        aug(i, A.cols) = b[i];
    }
    matrix_row_reduce(aug);
    std::vector<Rational> x(A.cols, Rational(0));
    for (std::size_t i = 0; i < aug.rows; ++i) {
        std::size_t lead = aug.cols;
        for (std::size_t j = 0; j < aug.cols; ++j)
            if (aug(i, j) != 0) {
                lead = j;
                break;
            }
        if (lead == aug.cols) continue;        // zero row
        if (lead == A.cols) return std::nullopt;  // 0 = nonzero
        x[lead] = aug(i, A.cols);
        // columns past the pivot with nonzero entries are free; they stay zero
    }
    // verify (guards the underdetermined case)
    for (std::size_t i = 0; i < A.rows; ++i) {
        Rational acc = 0;
        for (std::size_t j = 0; j < A.cols; ++j) acc += A(i, j) * x[j];
        if (acc != b[i]) return std::nullopt;
    }
    return x;
}

/// Basis of the right nullspace of A, exact.
inline std::vector<std::vector<Rational>> matrix_nullspace(Matrix<Rational> a) {
    const std::size_t n = a.cols;
    matrix_row_reduce(a);
    std::vector<std::ptrdiff_t> pivot_of_col(n, -1);
    std::size_t r = 0;
    for (std::size_t i = 0; i < a.rows; ++i) {
        std::size_t lead = n;
        for (std::size_t j = 0; j < n; ++j)
            if (a(i, j) != 0) {
                lead = j;
                break;
            }
        if (lead == n) break;
        pivot_of_col[lead] = static_cast<std::ptrdiff_t>(i);
        ++r;
    }
    std::vector<std::vector<Rational>> basis;
    for (std::size_t j = 0; j < n; ++j) {
        if (pivot_of_col[j] >= 0) continue;
        std::vector<Rational> v(n, Rational(0));
        v[j] = 1;
        for (std::size_t col = 0; col < n; ++col) {
            if (pivot_of_col[col] < 0) continue;
            v[col] = -a(static_cast<std::size_t>(pivot_of_col[col]), j);
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

/// exp of a nilpotent matrix, exact: the series terminates. scalar(q) must
/// produce the ring element q*1.
template <class T, class MakeScalar>
Matrix<T> matrix_exp_nilpotent(const Matrix<T>& m, MakeScalar scalar) {
    if (!m.is_square()) throw std::invalid_argument("matrix_exp_nilpotent: not square");
    const std::size_t n = m.rows;
    Matrix<T> acc = Matrix<T>::identity(n, scalar(Rational(1)), T());
    Matrix<T> power = m;
    Rational factorial = 1;
    for (std::size_t k = 1; k <= n + 1; ++k) {
        if (power.is_zero()) return acc;
        factorial *= Rational(static_cast<long long>(k));
        acc = acc + matrix_scaled(power, scalar(Rational(1) / factorial));
        power = power * m;
    }
    if (!power.is_zero()) throw std::invalid_argument("matrix_exp_nilpotent: matrix is not nilpotent");
    return acc;
}

/// log of a unipotent matrix (I + nilpotent), exact.
template <class T, class MakeScalar>
Matrix<T> matrix_log_unipotent(const Matrix<T>& m, MakeScalar scalar) {
    if (!m.is_square()) throw std::invalid_argument("matrix_log_unipotent: not square");
    const std::size_t n = m.rows;
    Matrix<T> k = m - Matrix<T>::identity(n, scalar(Rational(1)), T());
    Matrix<T> acc(n, n);
    Matrix<T> power = k;
    for (std::size_t j = 1; j <= n + 1; ++j) {
        if (power.is_zero()) return acc;
        Rational c = Rational(j % 2 == 1 ? 1 : -1) / Rational(static_cast<long long>(j));
        acc = acc + matrix_scaled(power, scalar(c));
        power = power * k;
    }
    if (!power.is_zero()) throw std::invalid_argument("matrix_log_unipotent: matrix is not unipotent");
    return acc;
}

inline Rational rational_scalar(const Rational& q) { return q; }

}  // namespace subres
