#pragma once

#include "jordan.hpp"
#include "lie_algebra.hpp"

namespace solvlie {

/// Leading-principal-minor test; exact in rational mode.
template <class T>
bool is_positive_definite(const Matrix<T>& g) {
    if (!g.is_square()) throw NonSquare("is_positive_definite");
    for (std::size_t k = 1; k <= g.rows(); ++k) {
        Matrix<T> sub(k, k);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) sub(i, j) = g(i, j);
        if (scalar_traits<T>::to_double(determinant(sub)) <= 0) return false;
    }
    return true;
}

/// A commutator-closed space of operators on a Lie algebra's coordinate
/// space, with a canonical basis and bracket table.
template <class T>
struct DerivationSpace {
    std::size_t parent_dim = 0;
    std::vector<Matrix<T>> basis;

    std::size_t dim() const { return basis.size(); }

    Span<T> span() const {
        Span<T> s(parent_dim * parent_dim);
        for (const auto& b : basis) s.insert(b.vectorized());
        return s;
    }

    bool contains(const Matrix<T>& op) const { return span().contains(op.vectorized()); }

    bool contains_all(const DerivationSpace& other) const {
        auto s = span();
        for (const auto& b : other.basis)
            if (!s.contains(b.vectorized())) return false;
        return true;
    }
};

namespace detail {

template <class T>
DerivationSpace<T> space_from_kernel(std::size_t n, const Matrix<T>& system) {
    DerivationSpace<T> ds;
    ds.parent_dim = n;
    for (auto& v : nullspace(system)) ds.basis.push_back(Matrix<T>::unvectorize(v, n, n));
    return ds;
}

}  // namespace detail

/// Coordinates of [basis_i, basis_j] for i < j in the space's own basis;
/// throws if the space is not closed under the commutator.
template <class T>
std::vector<Vec<T>> closure_table(const DerivationSpace<T>& ds) {
    const std::size_t n = ds.parent_dim;
    Matrix<T> cols(n * n, ds.basis.size());
    for (std::size_t k = 0; k < ds.basis.size(); ++k) {
        Vec<T> vk = ds.basis[k].vectorized();
        for (std::size_t r = 0; r < n * n; ++r) cols(r, k) = vk[r];
    }
    std::vector<Vec<T>> table;
    for (std::size_t i = 0; i < ds.basis.size(); ++i)
        for (std::size_t j = i + 1; j < ds.basis.size(); ++j) {
            Matrix<T> c = ds.basis[i] * ds.basis[j] - ds.basis[j] * ds.basis[i];
            auto x = solve(cols, c.vectorized());
            if (!x) throw InternalError("derivation space not commutator closed");
            table.push_back(std::move(*x));
        }
    return table;
}

/// Full derivation algebra Der(alg) as the kernel of the Leibniz system.
template <class T>
DerivationSpace<T> derivation_algebra(const LieAlgebra<T>& alg) {
    return detail::space_from_kernel(alg.dim(), derivation_system(alg));
}

/// Derivations skew-symmetric for the inner product with Gram matrix g:
/// g D + D^t g = 0.
template <class T>
DerivationSpace<T> skew_derivations(const LieAlgebra<T>& alg, const Matrix<T>& g) {
    const std::size_t n = alg.dim();
    if (g.rows() != n || !g.is_symmetric() || !is_positive_definite(g))
        throw NotPositiveDefinite("skew_derivations");
    Matrix<T> leibniz = derivation_system(alg);
    const std::size_t skew_rows = n * (n + 1) / 2;
    Matrix<T> sys(leibniz.rows() + skew_rows, n * n);
    for (std::size_t i = 0; i < leibniz.rows(); ++i)
        for (std::size_t j = 0; j < n * n; ++j) sys(i, j) = leibniz(i, j);
    std::size_t r = leibniz.rows();
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a; b < n; ++b) {
            // (g D)(a,b) + (D^t g)(a,b) = sum_k g(a,k) D(k,b) + D(k,a) g(k,b)
            for (std::size_t k = 0; k < n; ++k) {
                sys(r, b * n + k) += g(a, k);
                sys(r, a * n + k) += g(k, b);
            }
            ++r;
        }
    return detail::space_from_kernel(n, sys);
}

/// Sufficient certificate for compact embeddability of an operator span:
/// abelian, and every operator semisimple with purely imaginary spectrum.
template <class T>
bool imaginary_type_check(const std::vector<Matrix<T>>& ops) {
    for (std::size_t i = 0; i < ops.size(); ++i)
        for (std::size_t j = i + 1; j < ops.size(); ++j)
            if (!(ops[i] * ops[j] - ops[j] * ops[i]).is_zero_matrix()) return false;
    for (const auto& op : ops) {
        if (!op.is_square()) throw NonSquare("imaginary_type_check");
        if constexpr (is_exact_v<T>) {
            if (!is_semisimple(op)) return false;
            if (!has_purely_imaginary_spectrum(char_poly(op))) return false;
        } else {
            auto js = jordan_chevalley(op);
            double scale = std::max(1.0, op.max_abs());
            double tol = float_tolerance().load() * scale * 100;
            if (js.nilpotent.max_abs() > tol || js.real_part.max_abs() > tol) return false;
        }
    }
    return true;
}

}  // namespace solvlie
