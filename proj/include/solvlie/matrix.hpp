#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "scalar.hpp"

namespace solvlie {

template <class T>
using Vec = std::vector<T>;

/// Dense row-major matrix over an exact or floating scalar field.
template <class T>
class Matrix {
public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), e_(rows * cols, scalar_traits<T>::zero()) {}
    Matrix(std::initializer_list<std::initializer_list<T>> init) {
        rows_ = init.size();
        cols_ = rows_ ? init.begin()->size() : 0;
        e_.reserve(rows_ * cols_);
        for (const auto& row : init) {
            if (row.size() != cols_) throw std::invalid_argument("Matrix: ragged initializer");
            for (const auto& x : row) e_.push_back(x);
        }
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = scalar_traits<T>::one();
        return m;
    }
    static Matrix zero(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }
    static Matrix diagonal(const Vec<T>& d) {
        Matrix m(d.size(), d.size());
        for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
        return m;
    }
    static Matrix from_rows(const std::vector<Vec<T>>& rows) {
        if (rows.empty()) return Matrix();
        Matrix m(rows.size(), rows[0].size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != m.cols_) throw std::invalid_argument("Matrix: ragged rows");
            for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
        }
        return m;
    }
    static Matrix from_columns(const std::vector<Vec<T>>& cols) {
        return from_rows(cols).transposed();
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    T& operator()(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }

    Vec<T> row(std::size_t i) const {
        return Vec<T>(e_.begin() + i * cols_, e_.begin() + (i + 1) * cols_);
    }
    Vec<T> column(std::size_t j) const {
        Vec<T> c(rows_);
        for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
        return c;
    }

    Matrix transposed() const {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    Matrix& operator+=(const Matrix& o) {
        check_same_shape(o);
        for (std::size_t k = 0; k < e_.size(); ++k) e_[k] += o.e_[k];
        return *this;
    }
    Matrix& operator-=(const Matrix& o) {
        check_same_shape(o);
        for (std::size_t k = 0; k < e_.size(); ++k) e_[k] -= o.e_[k];
        return *this;
    }
    Matrix& operator*=(const T& s) {
        for (auto& x : e_) x *= s;
        return *this;
    }
    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator*(Matrix a, const T& s) { return a *= s; }
    friend Matrix operator*(const T& s, Matrix a) { return a *= s; }
    Matrix operator-() const {
        Matrix m = *this;
        for (auto& x : m.e_) x = -x;
        return m;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) throw std::invalid_argument("Matrix: shape mismatch in product");
        Matrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const T& aik = a(i, k);
                if (scalar_traits<T>::is_zero(aik)) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
            }
        return c;
    }

    Vec<T> apply(const Vec<T>& v) const {
        if (v.size() != cols_) throw std::invalid_argument("Matrix: shape mismatch in apply");
        Vec<T> w(rows_, scalar_traits<T>::zero());
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) w[i] += (*this)(i, j) * v[j];
        return w;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
    }
    friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

    T trace() const {
        T t = scalar_traits<T>::zero();
        for (std::size_t i = 0; i < rows_ && i < cols_; ++i) t += (*this)(i, i);
        return t;
    }

    bool is_zero_matrix() const {
        double scale = max_abs();
        (void)scale;
        for (const auto& x : e_)
            if (!scalar_traits<T>::is_zero(x, is_exact_v<T> ? 1.0 : max_abs())) return false;
        return true;
    }

    bool is_symmetric() const {
        if (!is_square()) return false;
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = i + 1; j < cols_; ++j)
                if ((*this)(i, j) != (*this)(j, i)) return false;
        return true;
    }

    double max_abs() const {
        double m = 0.0;
        for (const auto& x : e_) {
            double a = scalar_traits<T>::abs_double(x);
            if (a > m) m = a;
        }
        return m;
    }

    /// Column-major vectorization; pairs with unvectorize.
    Vec<T> vectorized() const {
        Vec<T> v;
        v.reserve(rows_ * cols_);
        for (std::size_t j = 0; j < cols_; ++j)
            for (std::size_t i = 0; i < rows_; ++i) v.push_back((*this)(i, j));
        return v;
    }
    static Matrix unvectorize(const Vec<T>& v, std::size_t rows, std::size_t cols) {
        if (v.size() != rows * cols) throw std::invalid_argument("Matrix: unvectorize size");
        Matrix m(rows, cols);
        std::size_t k = 0;
        for (std::size_t j = 0; j < cols; ++j)
            for (std::size_t i = 0; i < rows; ++i) m(i, j) = v[k++];
        return m;
    }

private:
    void check_same_shape(const Matrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw std::invalid_argument("Matrix: shape mismatch");
    }

    std::size_t rows_, cols_;
    std::vector<T> e_;
};

namespace vecops {

template <class T>
Vec<T> add(Vec<T> a, const Vec<T>& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
    return a;
}
template <class T>
Vec<T> sub(Vec<T> a, const Vec<T>& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
    return a;
}
template <class T>
Vec<T> scale(Vec<T> a, const T& s) {
    for (auto& x : a) x *= s;
    return a;
}
template <class T>
bool is_zero(const Vec<T>& a) {
    double m = 0.0;
    if constexpr (!is_exact_v<T>)
        for (const auto& x : a) m = std::max(m, scalar_traits<T>::abs_double(x));
    for (const auto& x : a)
        if (!scalar_traits<T>::is_zero(x, m)) return false;
    return true;
}
template <class T>
Vec<T> zero(std::size_t n) {
    return Vec<T>(n, scalar_traits<T>::zero());
}
template <class T>
Vec<T> unit(std::size_t n, std::size_t k) {
    Vec<T> v(n, scalar_traits<T>::zero());
    v[k] = scalar_traits<T>::one();
    return v;
}

}  // namespace vecops

/// Reduced row echelon form in place. Returns the pivot column of each
/// pivot row, in row order (so pivots are ordered by column index).
template <class T>
std::vector<std::size_t> rref(Matrix<T>& m) {
    std::vector<std::size_t> pivots;
    double scale = is_exact_v<T> ? 1.0 : std::max(1.0, m.max_abs());
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        // pick the pivot: first nonzero in exact mode, largest in float mode
        std::size_t best = m.rows();
        double best_abs = 0.0;
        for (std::size_t i = r; i < m.rows(); ++i) {
            if (scalar_traits<T>::is_zero(m(i, c), scale)) continue;
            if constexpr (is_exact_v<T>) {
                best = i;
                break;
            } else {
                double a = scalar_traits<T>::abs_double(m(i, c));
                if (a > best_abs) {
                    best_abs = a;
                    best = i;
                }
            }
        }
        if (best == m.rows()) continue;
        if (best != r)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(r, j), m(best, j));
        T inv = scalar_traits<T>::one() / m(r, c);
        for (std::size_t j = 0; j < m.cols(); ++j) m(r, j) *= inv;
        m(r, c) = scalar_traits<T>::one();
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r) continue;
            T f = m(i, c);
            if (scalar_traits<T>::is_zero(f, scale)) {
                m(i, c) = scalar_traits<T>::zero();
                continue;
            }
            for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
            m(i, c) = scalar_traits<T>::zero();
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

template <class T>
std::size_t rank(Matrix<T> m) {
    return rref(m).size();
}

/// Canonical kernel basis: for each free column, the vector with 1 in the
/// free coordinate and the negated pivot-column entries elsewhere.
template <class T>
std::vector<Vec<T>> nullspace(Matrix<T> m) {
    const std::size_t n = m.cols();
    auto pivots = rref(m);
    std::vector<bool> is_pivot(n, false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<Vec<T>> basis;
    for (std::size_t c = 0; c < n; ++c) {
        if (is_pivot[c]) continue;
        Vec<T> v(n, scalar_traits<T>::zero());
        v[c] = scalar_traits<T>::one();
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m(r, c);
        basis.push_back(std::move(v));
    }
    return basis;
}

template <class T>
std::optional<Matrix<T>> inverse(const Matrix<T>& m) {
    if (!m.is_square()) throw std::invalid_argument("inverse: non-square");
    const std::size_t n = m.rows();
    Matrix<T> aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
        aug(i, n + i) = scalar_traits<T>::one();
    }
    auto pivots = rref(aug);
    if (pivots.size() != n || pivots.back() >= n) return std::nullopt;
    Matrix<T> inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
    return inv;
}

template <class T>
T determinant(Matrix<T> m) {
    if (!m.is_square()) throw std::invalid_argument("determinant: non-square");
    const std::size_t n = m.rows();
    double scale = is_exact_v<T> ? 1.0 : std::max(1.0, m.max_abs());
    T det = scalar_traits<T>::one();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = n;
        for (std::size_t i = c; i < n; ++i)
            if (!scalar_traits<T>::is_zero(m(i, c), scale)) {
                piv = i;
                break;
            }
        if (piv == n) return scalar_traits<T>::zero();
        if (piv != c) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m(c, j), m(piv, j));
            det = -det;
        }
        det *= m(c, c);
        T inv = scalar_traits<T>::one() / m(c, c);
        for (std::size_t i = c + 1; i < n; ++i) {
            T f = m(i, c) * inv;
            if (scalar_traits<T>::is_zero(f, scale)) continue;
            for (std::size_t j = c; j < n; ++j) m(i, j) -= f * m(c, j);
        }
    }
    return det;
}

/// One solution of Ax = b, or nullopt if inconsistent.
template <class T>
std::optional<Vec<T>> solve(const Matrix<T>& a, const Vec<T>& b) {
    if (b.size() != a.rows()) throw std::invalid_argument("solve: shape mismatch");
    Matrix<T> aug(a.rows(), a.cols() + 1);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
        aug(i, a.cols()) = b[i];
    }
    auto pivots = rref(aug);
    if (!pivots.empty() && pivots.back() == a.cols()) return std::nullopt;
    Vec<T> x(a.cols(), scalar_traits<T>::zero());
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug(r, a.cols());
    return x;
}

/// Row span with canonical (RREF) basis; supports membership tests and
/// incremental closure computations.
template <class T>
class Span {
public:
    Span() : ambient_(0) {}
    explicit Span(std::size_t ambient_dim) : ambient_(ambient_dim) {}

    std::size_t ambient_dim() const { return ambient_; }
    std::size_t dim() const { return rows_.size(); }

    /// Inserts a vector; returns true if it enlarged the span.
    bool insert(Vec<T> v) {
        if (v.size() != ambient_) throw std::invalid_argument("Span: wrong vector size");
        reduce_against_basis(v);
        if (vecops::is_zero(v)) return false;
        // normalize on leading entry
        std::size_t lead = leading_index(v);
        T inv = scalar_traits<T>::one() / v[lead];
        for (auto& x : v) x *= inv;
        v[lead] = scalar_traits<T>::one();
        // back-substitute into existing rows, keep rows sorted by pivot
        for (auto& r : rows_) {
            T f = r[lead];
            if (scalar_traits<T>::is_zero(f, row_scale(r))) continue;
            for (std::size_t j = 0; j < ambient_; ++j) r[j] -= f * v[j];
            r[lead] = scalar_traits<T>::zero();
        }
        auto it = rows_.begin();
        while (it != rows_.end() && leading_index(*it) < lead) ++it;
        rows_.insert(it, std::move(v));
        return true;
    }

    bool contains(Vec<T> v) const {
        if (v.size() != ambient_) throw std::invalid_argument("Span: wrong vector size");
        reduce_against_basis(v);
        return vecops::is_zero(v);
    }

    /// Coordinates of v in the canonical basis, or nullopt if outside.
    std::optional<Vec<T>> coordinates(Vec<T> v) const {
        Vec<T> coeff(rows_.size(), scalar_traits<T>::zero());
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            std::size_t lead = leading_index(rows_[r]);
            T f = v[lead];
            if (scalar_traits<T>::is_zero(f, row_scale(v))) continue;
            coeff[r] = f;
            for (std::size_t j = 0; j < ambient_; ++j) v[j] -= f * rows_[r][j];
        }
        if (!vecops::is_zero(v)) return std::nullopt;
        return coeff;
    }

    const std::vector<Vec<T>>& basis() const { return rows_; }

    bool contains_span(const Span& other) const {
        for (const auto& v : other.rows_)
            if (!contains(v)) return false;
        return true;
    }

    friend bool operator==(const Span& a, const Span& b) {
        return a.ambient_ == b.ambient_ && a.rows_ == b.rows_;
    }

private:
    static double row_scale(const Vec<T>& v) {
        if constexpr (is_exact_v<T>) return 1.0;
        double m = 1.0;
        for (const auto& x : v) m = std::max(m, scalar_traits<T>::abs_double(x));
        return m;
    }
    static std::size_t leading_index(const Vec<T>& v) {
        for (std::size_t j = 0; j < v.size(); ++j)
            if (!scalar_traits<T>::is_zero(v[j], row_scale(v))) return j;
        throw std::logic_error("Span: zero row in basis");
    }
    void reduce_against_basis(Vec<T>& v) const {
        for (const auto& r : rows_) {
            std::size_t lead = leading_index(r);
            T f = v[lead];
            if (scalar_traits<T>::is_zero(f, row_scale(v))) continue;
            for (std::size_t j = 0; j < ambient_; ++j) v[j] -= f * r[j];
            v[lead] = scalar_traits<T>::zero();
        }
    }

    std::size_t ambient_;
    std::vector<Vec<T>> rows_;  // RREF rows sorted by pivot column
};

}  // namespace solvlie
