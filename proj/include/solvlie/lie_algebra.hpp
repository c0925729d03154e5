#pragma once

#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"
#include "jordan.hpp"
#include "matrix.hpp"
#include "poly.hpp"

namespace solvlie {

/// Finite-dimensional real Lie algebra given by structure constants in a
/// named basis. Only brackets [b_i, b_j] with i < j are stored;
/// antisymmetry is definitional. The Jacobi identity is validated at
/// construction.
template <class T>
class LieAlgebra {
public:
    LieAlgebra() : dim_(0) {}

    LieAlgebra(std::string name, std::vector<std::string> basis_names,
               std::vector<Vec<T>> upper_brackets, bool validate_jacobi = true)
        : name_(std::move(name)),
          dim_(basis_names.size()),
          basis_names_(std::move(basis_names)),
          c_(std::move(upper_brackets)) {
        if (c_.size() != dim_ * (dim_ - 1) / 2)
            throw std::invalid_argument("LieAlgebra: wrong number of brackets");
        for (const auto& v : c_)
            if (v.size() != dim_) throw std::invalid_argument("LieAlgebra: bracket vector size");
        if (validate_jacobi) validate();
    }

    static LieAlgebra abelian(std::size_t n, const std::string& name = "abelian") {
        std::vector<std::string> names;
        for (std::size_t i = 1; i <= n; ++i) names.push_back("e" + std::to_string(i));
        return LieAlgebra(name, std::move(names),
                          std::vector<Vec<T>>(n * (n - 1) / 2, vecops::zero<T>(n)));
    }

    const std::string& name() const { return name_; }
    void set_name(std::string n) { name_ = std::move(n); }
    std::size_t dim() const { return dim_; }
    const std::vector<std::string>& basis_names() const { return basis_names_; }

    const Vec<T>& bracket_upper(std::size_t i, std::size_t j) const {
        return c_[upper_index(i, j)];
    }

    Vec<T> bracket_basis(std::size_t i, std::size_t j) const {
        if (i == j) return vecops::zero<T>(dim_);
        if (i < j) return c_[upper_index(i, j)];
        return vecops::scale(c_[upper_index(j, i)], -scalar_traits<T>::one());
    }

    Vec<T> bracket(const Vec<T>& x, const Vec<T>& y) const {
        Vec<T> r = vecops::zero<T>(dim_);
        for (std::size_t i = 0; i < dim_; ++i) {
            if (scalar_traits<T>::is_zero(x[i])) continue;
            for (std::size_t j = 0; j < dim_; ++j) {
                if (i == j || scalar_traits<T>::is_zero(y[j])) continue;
                T f = x[i] * y[j];
                const Vec<T>& b = bracket_upper(std::min(i, j), std::max(i, j));
                if (i > j) f = -f;
                for (std::size_t k = 0; k < dim_; ++k) r[k] += f * b[k];
            }
        }
        return r;
    }

    /// Matrix of ad(b_k) acting on coordinates.
    Matrix<T> ad_basis(std::size_t k) const {
        Matrix<T> m(dim_, dim_);
        for (std::size_t j = 0; j < dim_; ++j) {
            Vec<T> col = bracket_basis(k, j);
            for (std::size_t i = 0; i < dim_; ++i) m(i, j) = col[i];
        }
        return m;
    }

    Matrix<T> ad(const Vec<T>& x) const {
        Matrix<T> m(dim_, dim_);
        for (std::size_t j = 0; j < dim_; ++j) {
            Vec<T> col = bracket(x, vecops::unit<T>(dim_, j));
            for (std::size_t i = 0; i < dim_; ++i) m(i, j) = col[i];
        }
        return m;
    }

    /// Checks the Jacobi identity on all basis triples; throws
    /// JacobiViolation naming the first offending triple.
    void validate() const {
        for (std::size_t i = 0; i < dim_; ++i)
            for (std::size_t j = i + 1; j < dim_; ++j)
                for (std::size_t k = j + 1; k < dim_; ++k) {
                    Vec<T> d = bracket(bracket_basis(i, j), vecops::unit<T>(dim_, k));
                    d = vecops::add(d, bracket(bracket_basis(j, k), vecops::unit<T>(dim_, i)));
                    d = vecops::add(d, bracket(bracket_basis(k, i), vecops::unit<T>(dim_, j)));
                    if (!vecops::is_zero(d))
                        throw JacobiViolation("triple (" + basis_names_[i] + ", " +
                                              basis_names_[j] + ", " + basis_names_[k] + ")");
                }
    }

    const std::optional<std::vector<Vec<T>>>& declared_nilradical() const {
        return declared_nilradical_;
    }
    void set_declared_nilradical(std::vector<Vec<T>> basis) {
        declared_nilradical_ = std::move(basis);
    }

private:
    std::size_t upper_index(std::size_t i, std::size_t j) const {
        // index of (i, j), i < j, in row-major upper-triangular order
        return i * dim_ - i * (i + 1) / 2 + (j - i - 1);
    }

    std::string name_;
    std::size_t dim_;
    std::vector<std::string> basis_names_;
    std::vector<Vec<T>> c_;
    std::optional<std::vector<Vec<T>>> declared_nilradical_;
};

enum class SeriesKind { Derived, LowerCentral };

template <class T>
Span<T> full_span(const LieAlgebra<T>& alg) {
    Span<T> s(alg.dim());
    for (std::size_t i = 0; i < alg.dim(); ++i) s.insert(vecops::unit<T>(alg.dim(), i));
    return s;
}

template <class T>
Span<T> bracket_span(const LieAlgebra<T>& alg, const Span<T>& a, const Span<T>& b) {
    Span<T> r(alg.dim());
    for (const auto& x : a.basis())
        for (const auto& y : b.basis()) {
            Vec<T> v = alg.bracket(x, y);
            if (!vecops::is_zero(v)) r.insert(std::move(v));
        }
    return r;
}

/// Derived or lower central series, starting from the full algebra and
/// ending at the first repeated term (0 for solvable/nilpotent input).
template <class T>
std::vector<Span<T>> characteristic_series(const LieAlgebra<T>& alg, SeriesKind kind) {
    std::vector<Span<T>> series{full_span(alg)};
    while (true) {
        const Span<T>& prev = series.back();
        Span<T> next = kind == SeriesKind::Derived ? bracket_span(alg, prev, prev)
                                                   : bracket_span(alg, series.front(), prev);
        if (next.dim() == prev.dim()) break;
        bool zero = next.dim() == 0;
        series.push_back(std::move(next));
        if (zero) break;
    }
    return series;
}

template <class T>
bool is_solvable(const LieAlgebra<T>& alg) {
    return characteristic_series(alg, SeriesKind::Derived).back().dim() == 0;
}

template <class T>
bool is_nilpotent(const LieAlgebra<T>& alg) {
    return characteristic_series(alg, SeriesKind::LowerCentral).back().dim() == 0;
}

template <class T>
Span<T> center(const LieAlgebra<T>& alg) {
    const std::size_t n = alg.dim();
    Matrix<T> stacked(n * n, n);
    for (std::size_t k = 0; k < n; ++k) {
        Matrix<T> adk = alg.ad_basis(k);
        // rows for the condition [x, b_k] = 0, i.e. ad(b_k) x = 0
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) stacked(k * n + i, j) = adk(i, j);
    }
    Span<T> c(n);
    for (auto& v : nullspace(stacked)) c.insert(std::move(v));
    return c;
}

template <class T>
Matrix<T> killing_form(const LieAlgebra<T>& alg) {
    const std::size_t n = alg.dim();
    std::vector<Matrix<T>> ads;
    for (std::size_t k = 0; k < n; ++k) ads.push_back(alg.ad_basis(k));
    Matrix<T> b(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) b(i, j) = b(j, i) = (ads[i] * ads[j]).trace();
    return b;
}

template <class T>
bool is_unimodular(const LieAlgebra<T>& alg) {
    for (std::size_t k = 0; k < alg.dim(); ++k)
        if (!scalar_traits<T>::is_zero(alg.ad_basis(k).trace(),
                                       is_exact_v<T> ? 1.0 : alg.ad_basis(k).max_abs()))
            return false;
    return true;
}

/// Structure constants of the subalgebra spanned by a Span; throws
/// NotClosed if the span is not bracket-closed.
template <class T>
LieAlgebra<T> subalgebra(const LieAlgebra<T>& alg, const Span<T>& sub,
                         const std::string& name = "sub") {
    const auto& basis = sub.basis();
    const std::size_t k = basis.size();
    std::vector<Vec<T>> brackets;
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j) {
            auto coords = sub.coordinates(alg.bracket(basis[i], basis[j]));
            if (!coords) throw NotClosed("subspace is not bracket-closed");
            brackets.push_back(std::move(*coords));
        }
    std::vector<std::string> names;
    for (std::size_t i = 1; i <= k; ++i) names.push_back("x" + std::to_string(i));
    return LieAlgebra<T>(name, std::move(names), std::move(brackets));
}

/// Standard-basis complement of a span: the unit vectors at its free
/// (non-pivot) coordinates.
template <class T>
std::vector<Vec<T>> echelon_complement(const Span<T>& sub) {
    std::vector<bool> pivot(sub.ambient_dim(), false);
    for (const auto& r : sub.basis()) {
        for (std::size_t j = 0; j < r.size(); ++j)
            if (!scalar_traits<T>::is_zero(r[j])) {
                pivot[j] = true;
                break;
            }
    }
    std::vector<Vec<T>> comp;
    for (std::size_t j = 0; j < sub.ambient_dim(); ++j)
        if (!pivot[j]) comp.push_back(vecops::unit<T>(sub.ambient_dim(), j));
    return comp;
}

/// Quotient algebra by an ideal, on the echelon complement basis.
template <class T>
LieAlgebra<T> quotient(const LieAlgebra<T>& alg, const Span<T>& ideal,
                       const std::string& name = "quot") {
    auto comp = echelon_complement(ideal);
    const std::size_t k = comp.size();
    // Coordinates in the combined (complement + ideal) basis are found by
    // solving against the matrix with those vectors as columns.
    std::vector<Vec<T>> cols = comp;
    for (const auto& v : ideal.basis()) cols.push_back(v);
    Matrix<T> basis_matrix = Matrix<T>::from_columns(cols);
    auto project = [&](const Vec<T>& v) {
        auto x = solve(basis_matrix, v);
        if (!x) throw InternalError("quotient: projection failed");
        return Vec<T>(x->begin(), x->begin() + static_cast<long>(k));
    };
    std::vector<Vec<T>> brackets;
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j)
            brackets.push_back(project(alg.bracket(comp[i], comp[j])));
    std::vector<std::string> names;
    for (std::size_t i = 1; i <= k; ++i) names.push_back("q" + std::to_string(i));
    return LieAlgebra<T>(name, std::move(names), std::move(brackets));
}

/// Leibniz-rule linear system whose kernel (on column-major vectorized
/// operators) is the derivation algebra.
template <class T>
Matrix<T> derivation_system(const LieAlgebra<T>& alg) {
    const std::size_t n = alg.dim();
    std::vector<Matrix<T>> ads;
    for (std::size_t k = 0; k < n; ++k) ads.push_back(alg.ad_basis(k));
    // Unknown D as vec(D) column-major: D(a,b) = v[b*n + a].
    const std::size_t pairs = n * (n - 1) / 2;
    Matrix<T> sys(pairs * n, n * n);
    std::size_t row0 = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const Vec<T> cij = alg.bracket_upper(i, j);
            // rows express D[b_i,b_j] - [D b_i, b_j] - [b_i, D b_j] = 0
            for (std::size_t r = 0; r < n; ++r) {
                // D [b_i, b_j] term: sum_k c_k D(r, k)
                for (std::size_t k = 0; k < n; ++k) sys(row0 + r, k * n + r) += cij[k];
                // -[D b_i, b_j] = ad(b_j) D b_i ; D b_i = column i of D
                for (std::size_t k = 0; k < n; ++k) sys(row0 + r, i * n + k) += ads[j](r, k);
                // -[b_i, D b_j] = -ad(b_i) D b_j
                for (std::size_t k = 0; k < n; ++k) sys(row0 + r, j * n + k) -= ads[i](r, k);
            }
            row0 += n;
        }
    return sys;
}

template <class T>
bool is_derivation(const LieAlgebra<T>& alg, const Matrix<T>& d) {
    const std::size_t n = alg.dim();
    if (d.rows() != n || d.cols() != n) return false;
    double scale = is_exact_v<T> ? 1.0 : std::max(1.0, d.max_abs());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            Vec<T> lhs = d.apply(alg.bracket_upper(i, j));
            Vec<T> rhs = vecops::add(alg.bracket(d.column(i), vecops::unit<T>(n, j)),
                                     alg.bracket(vecops::unit<T>(n, i), d.column(j)));
            Vec<T> diff = vecops::sub(lhs, rhs);
            for (const auto& x : diff)
                if (!scalar_traits<T>::is_zero(x, scale)) return false;
        }
    return true;
}

/// Semidirect sum action-first: the new basis is (action generators,
/// base). Each action operator must be a derivation of the base and the
/// operator span must be closed under commutators.
template <class T>
LieAlgebra<T> build_semidirect(const LieAlgebra<T>& base, const std::vector<Matrix<T>>& action,
                               std::vector<std::string> action_names = {},
                               const std::string& name = "semidirect") {
    const std::size_t n = base.dim();
    const std::size_t m = action.size();
    for (const auto& d : action)
        if (!is_derivation(base, d)) throw NotDerivation("semidirect action operator");
    Span<T> op_span(n * n);
    for (const auto& d : action)
        if (!op_span.insert(d.vectorized()))
            throw ActionNotClosed("action operators are linearly dependent");
    std::vector<std::vector<std::optional<Vec<T>>>> comm(m);
    for (std::size_t i = 0; i < m; ++i) {
        comm[i].resize(m);
        for (std::size_t j = i + 1; j < m; ++j) {
            Matrix<T> c = action[i] * action[j] - action[j] * action[i];
            // coordinates relative to the *given* operators, not the
            // canonical span basis
            Matrix<T> cols(n * n, m);
            for (std::size_t k = 0; k < m; ++k) {
                Vec<T> vk = action[k].vectorized();
                for (std::size_t r = 0; r < n * n; ++r) cols(r, k) = vk[r];
            }
            auto x = solve(cols, c.vectorized());
            if (!x) throw ActionNotClosed("commutator leaves the action span");
            comm[i][j] = *x;
        }
    }
    if (action_names.empty())
        for (std::size_t i = 1; i <= m; ++i) action_names.push_back("d" + std::to_string(i));
    std::vector<std::string> names = action_names;
    for (const auto& b : base.basis_names()) names.push_back(b);
    const std::size_t total = n + m;
    std::vector<Vec<T>> brackets;
    for (std::size_t i = 0; i < total; ++i)
        for (std::size_t j = i + 1; j < total; ++j) {
            Vec<T> v = vecops::zero<T>(total);
            if (i < m && j < m) {
                for (std::size_t k = 0; k < m; ++k) v[k] = (*comm[i][j])[k];
            } else if (i < m) {
                Vec<T> img = action[i].column(j - m);
                for (std::size_t k = 0; k < n; ++k) v[m + k] = img[k];
            } else {
                const Vec<T>& b = base.bracket_upper(i - m, j - m);
                for (std::size_t k = 0; k < n; ++k) v[m + k] = b[k];
            }
            brackets.push_back(std::move(v));
        }
    return LieAlgebra<T>(name, std::move(names), std::move(brackets));
}

/// Same algebra on the basis given by the columns of an invertible P
/// (new basis vectors in old coordinates).
template <class T>
LieAlgebra<T> change_basis(const LieAlgebra<T>& alg, const Matrix<T>& p,
                           std::vector<std::string> names = {},
                           const std::string& name = "") {
    const std::size_t n = alg.dim();
    auto pinv = inverse(p);
    if (!pinv) throw std::invalid_argument("change_basis: singular matrix");
    std::vector<Vec<T>> brackets;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            brackets.push_back(pinv->apply(alg.bracket(p.column(i), p.column(j))));
    if (names.empty())
        for (std::size_t i = 1; i <= n; ++i) names.push_back("u" + std::to_string(i));
    return LieAlgebra<T>(name.empty() ? alg.name() + "_cb" : name, std::move(names),
                         std::move(brackets));
}

template <class T>
bool complete_solvability_check(const LieAlgebra<T>& alg) {
    if (!is_solvable(alg)) throw NotSolvable(alg.name());
    for (std::size_t k = 0; k < alg.dim(); ++k) {
        Matrix<T> ad = alg.ad_basis(k);
        if constexpr (is_exact_v<T>) {
            if (!has_real_spectrum(char_poly(ad))) return false;
        } else {
            auto js = jordan_chevalley(ad);
            if (js.imaginary_part.max_abs() >
                float_tolerance().load() * std::max(1.0, ad.max_abs()) * 100)
                return false;
        }
    }
    return true;
}

/// Largest nilpotent ideal of a solvable Lie algebra, computed from the
/// radical of the associative matrix algebra generated by the adjoint
/// operators: x is in the nilradical iff trace(ad(x) B) = 0 for every B
/// in that algebra. A declared nilradical on the algebra bypasses the
/// computation after an ideal + nilpotency verification.
template <class T>
Span<T> nilradical(const LieAlgebra<T>& alg) {
    if (!is_solvable(alg)) throw NotSolvable(alg.name());
    const std::size_t n = alg.dim();

    if (alg.declared_nilradical()) {
        Span<T> declared(n);
        for (const auto& v : *alg.declared_nilradical()) declared.insert(v);
        for (std::size_t k = 0; k < n; ++k)
            for (const auto& v : declared.basis())
                if (!declared.contains(alg.bracket(vecops::unit<T>(n, k), v)))
                    throw NotNilpotent("declared nilradical is not an ideal");
        if (!is_nilpotent(subalgebra(alg, declared)))
            throw NotNilpotent("declared nilradical is not nilpotent");
        return declared;
    }

    std::vector<Matrix<T>> gens;
    for (std::size_t k = 0; k < n; ++k) {
        Matrix<T> ad = alg.ad_basis(k);
        if (!ad.is_zero_matrix()) gens.push_back(ad);
    }
    Span<T> assoc(n * n);
    std::vector<Matrix<T>> work;
    std::vector<Matrix<T>> basis_mats;
    for (const auto& g : gens)
        if (assoc.insert(g.vectorized())) {
            work.push_back(g);
            basis_mats.push_back(g);
        }
    while (!work.empty()) {
        Matrix<T> m = std::move(work.back());
        work.pop_back();
        for (const auto& g : gens) {
            Matrix<T> p = g * m;
            if (assoc.insert(p.vectorized())) {
                work.push_back(p);
                basis_mats.push_back(p);
            }
        }
    }
    Matrix<T> cond(basis_mats.size(), n);
    for (std::size_t r = 0; r < basis_mats.size(); ++r)
        for (std::size_t k = 0; k < n; ++k)
            cond(r, k) = (alg.ad_basis(k) * basis_mats[r]).trace();
    Span<T> nil(n);
    for (auto& v : nullspace(cond)) nil.insert(std::move(v));
    return nil;
}

struct SignatureCount {
    std::size_t positive = 0;
    std::size_t negative = 0;
    std::size_t zero = 0;
};

/// Signature of a symmetric matrix by exact congruence diagonalization.
template <class T>
SignatureCount signature(Matrix<T> m) {
    if (!m.is_square()) throw NonSquare("signature");
    const std::size_t n = m.rows();
    double scale = is_exact_v<T> ? 1.0 : std::max(1.0, m.max_abs());
    SignatureCount sig;
    std::vector<bool> done(n, false);
    for (std::size_t step = 0; step < n; ++step) {
        std::size_t piv = n;
        for (std::size_t i = 0; i < n; ++i)
            if (!done[i] && !scalar_traits<T>::is_zero(m(i, i), scale)) {
                piv = i;
                break;
            }
        if (piv == n) {
            // all remaining diagonal entries vanish; pull in an
            // off-diagonal entry if any remains
            std::size_t oi = n, oj = n;
            for (std::size_t i = 0; i < n && oi == n; ++i)
                for (std::size_t j = i + 1; j < n; ++j)
                    if (!done[i] && !done[j] && !scalar_traits<T>::is_zero(m(i, j), scale)) {
                        oi = i;
                        oj = j;
                        break;
                    }
            if (oi == n) break;
            for (std::size_t k = 0; k < n; ++k) m(oi, k) += m(oj, k);
            for (std::size_t k = 0; k < n; ++k) m(k, oi) += m(k, oj);
            piv = oi;
        }
        T d = m(piv, piv);
        if (scalar_traits<T>::to_double(d) > 0)
            ++sig.positive;
        else
            ++sig.negative;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == piv || done[i]) continue;
            T f = m(i, piv) / d;
            if (scalar_traits<T>::is_zero(f, scale)) continue;
            for (std::size_t k = 0; k < n; ++k) m(i, k) -= f * m(piv, k);
            for (std::size_t k = 0; k < n; ++k) m(k, i) -= f * m(k, piv);
        }
        done[piv] = true;
    }
    sig.zero = n - sig.positive - sig.negative;
    return sig;
}

/// Isomorphism-invariant structural profile. The complement spectrum is
/// informational only; profile comparison uses the invariant fields.
struct InvariantProfile {
    std::size_t dim = 0;
    std::vector<std::size_t> derived_dims;
    std::vector<std::size_t> lower_central_dims;
    std::size_t center_dim = 0;
    std::size_t nilradical_dim = 0;
    bool solvable = false;
    bool nilpotent = false;
    bool unimodular = false;
    bool completely_solvable = false;
    std::size_t killing_rank = 0;
    std::size_t killing_positive = 0;
    std::size_t killing_negative = 0;
    std::size_t derivation_dim = 0;
    std::vector<std::string> complement_ad_char_polys;

    /// Field (name, lhs, rhs) of the first provable invariant that
    /// differs, or nullopt if all invariant fields agree.
    static std::optional<std::string> first_difference(const InvariantProfile& a,
                                                       const InvariantProfile& b);
};

template <class T>
InvariantProfile invariant_profile(const LieAlgebra<T>& alg);

std::optional<std::string> profile_difference(const InvariantProfile& a,
                                              const InvariantProfile& b);

// explicit instantiation declarations live in lie_algebra.cpp
extern template InvariantProfile invariant_profile<Rat>(const LieAlgebra<Rat>&);
extern template InvariantProfile invariant_profile<double>(const LieAlgebra<double>&);

}  // namespace solvlie
