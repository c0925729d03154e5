#pragma once

#include "derivations.hpp"
#include "lie_algebra.hpp"

namespace solvlie {

/// Record of a modification construction: the ambient algebra, the
/// embedded source subalgebra basis, the map phi on that basis, and the
/// validated condition flags.
template <class T>
struct ModificationMap {
    LieAlgebra<T> ambient;
    std::vector<Vec<T>> r_basis;       // source basis in ambient coordinates
    Matrix<T> phi;                     // ambient.dim x r_basis.size()
    std::vector<Vec<T>> primed_basis;  // X_i + phi(X_i) in ambient coordinates
    bool condition1 = false;           // primed span closed under bracket
    bool condition2 = false;           // imaginary-type certificate on ad(phi(r))
    bool condition3 = false;           // [phi(r), r] inside r
    bool normal = false;               // phi(r) normalizes the primed span
};

template <class T>
struct ModificationResult {
    LieAlgebra<T> algebra;  // abstract algebra on the primed basis
    ModificationMap<T> map;
};

/// Builds the modified algebra on basis {X_i + phi(X_i)} inside ambient
/// and validates the three modification conditions plus normality.
template <class T>
ModificationResult<T> apply_modification(const LieAlgebra<T>& ambient,
                                         const std::vector<Vec<T>>& r_basis,
                                         const Matrix<T>& phi,
                                         const std::string& name = "modified") {
    const std::size_t n = ambient.dim();
    const std::size_t k = r_basis.size();
    if (phi.rows() != n || phi.cols() != k)
        throw std::invalid_argument("apply_modification: phi shape");

    Span<T> r_span(n);
    for (const auto& v : r_basis)
        if (!r_span.insert(v)) throw NotClosed("source basis is linearly dependent");
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j)
            if (!r_span.contains(ambient.bracket(r_basis[i], r_basis[j])))
                throw NotClosed("source subspace is not a subalgebra");
    if (!is_solvable(subalgebra(ambient, r_span))) throw NotSolvable("modification source");

    ModificationMap<T> mm;
    mm.ambient = ambient;
    mm.r_basis = r_basis;
    mm.phi = phi;
    for (std::size_t i = 0; i < k; ++i) {
        Vec<T> x = r_basis[i];
        Vec<T> p = phi.column(i);
        mm.primed_basis.push_back(vecops::add(x, p));
    }

    // condition (1): primed span is a subalgebra; structure constants on
    // the primed basis itself
    Matrix<T> v_cols = Matrix<T>::from_columns(mm.primed_basis);
    std::vector<Vec<T>> brackets;
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j) {
            auto x = solve(v_cols, ambient.bracket(mm.primed_basis[i], mm.primed_basis[j]));
            if (!x) throw NotClosed("primed span is not a subalgebra");
            brackets.push_back(std::move(*x));
        }
    mm.condition1 = true;

    // condition (2): sufficient compact-embeddability certificate
    std::vector<Matrix<T>> phi_ads;
    for (std::size_t i = 0; i < k; ++i) {
        Vec<T> p = phi.column(i);
        if (!vecops::is_zero(p)) phi_ads.push_back(ambient.ad(p));
    }
    if (!imaginary_type_check(phi_ads)) throw ConditionTwoFailed("ad(phi(r)) certificate");
    mm.condition2 = true;

    // condition (3): [phi(r), r] inside r
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            if (!r_span.contains(ambient.bracket(phi.column(i), r_basis[j])))
                throw ConditionThreeFailed("[phi(r), r] leaves r");
    mm.condition3 = true;

    Span<T> primed_span(n);
    for (const auto& v : mm.primed_basis) primed_span.insert(v);
    mm.normal = true;
    for (std::size_t i = 0; i < k && mm.normal; ++i)
        for (std::size_t j = 0; j < k; ++j)
            if (!primed_span.contains(ambient.bracket(phi.column(i), mm.primed_basis[j]))) {
                mm.normal = false;
                break;
            }

    std::vector<std::string> names;
    for (std::size_t i = 1; i <= k; ++i) names.push_back("x" + std::to_string(i));
    return {LieAlgebra<T>(name, std::move(names), std::move(brackets)), std::move(mm)};
}

template <class T>
struct SigmaResult {
    LieAlgebra<T> algebra;
    ModificationMap<T> witness;
};

/// Normalization to the completely solvable representative: modify by
/// phi(X) = -ad(X)_s^{iR} inside r extended by the commutator-closed
/// span of the imaginary Jordan parts.
template <class T>
SigmaResult<T> sigma(const LieAlgebra<T>& r) {
    if (!is_solvable(r)) throw NotSolvable(r.name());
    const std::size_t n = r.dim();

    // X -> ad(X)_s^{iR} is only linear on a complement of the nilradical
    // (ad of a nilradical element is nilpotent and contributes nothing),
    // so take Jordan parts on an adapted decomposition and extend phi by
    // linearity to the original basis.
    auto nil = nilradical(r);
    auto comp = echelon_complement(nil);
    std::vector<Matrix<T>> comp_imag;
    for (const auto& c : comp)
        comp_imag.push_back(jordan_chevalley(r.ad(c)).imaginary_part);

    // complement coordinates of each basis vector
    Matrix<T> adapted(n, n);
    for (std::size_t c = 0; c < nil.dim(); ++c)
        for (std::size_t rr = 0; rr < n; ++rr) adapted(rr, c) = nil.basis()[c][rr];
    for (std::size_t c = 0; c < comp.size(); ++c)
        for (std::size_t rr = 0; rr < n; ++rr) adapted(rr, nil.dim() + c) = comp[c][rr];
    auto adapted_inv = inverse(adapted);
    if (!adapted_inv) throw InternalError("sigma: degenerate adapted basis");

    std::vector<Matrix<T>> imag;
    for (std::size_t bk = 0; bk < n; ++bk) {
        Vec<T> coords = adapted_inv->apply(vecops::unit<T>(n, bk));
        Matrix<T> m(n, n);
        for (std::size_t c = 0; c < comp.size(); ++c)
            m += comp_imag[c] * coords[nil.dim() + c];
        imag.push_back(std::move(m));
    }

    // commutator-closed span generated by the imaginary parts
    Span<T> dspan(n * n);
    std::vector<Matrix<T>> work;
    for (const auto& j : imag)
        if (!j.is_zero_matrix() && dspan.insert(j.vectorized())) work.push_back(j);
    std::vector<Matrix<T>> dbasis = work;
    while (!work.empty()) {
        Matrix<T> m = std::move(work.back());
        work.pop_back();
        for (std::size_t i = 0; i < dbasis.size(); ++i) {
            Matrix<T> c = m * dbasis[i] - dbasis[i] * m;
            if (!c.is_zero_matrix() && dspan.insert(c.vectorized())) {
                work.push_back(c);
                dbasis.push_back(c);
            }
        }
    }

    const std::size_t m = dbasis.size();
    LieAlgebra<T> ambient = m == 0 ? r : build_semidirect(r, dbasis, {}, r.name() + "_amb");
    std::vector<Vec<T>> r_embedded;
    for (std::size_t i = 0; i < n; ++i) r_embedded.push_back(vecops::unit<T>(m + n, m + i));
    Matrix<T> phi(m + n, n);
    for (std::size_t bk = 0; bk < n; ++bk) {
        if (imag[bk].is_zero_matrix()) continue;
        Matrix<T> cols(n * n, m);
        for (std::size_t c = 0; c < m; ++c) {
            Vec<T> vc = dbasis[c].vectorized();
            for (std::size_t rr = 0; rr < n * n; ++rr) cols(rr, c) = vc[rr];
        }
        auto coords = solve(cols, imag[bk].vectorized());
        if (!coords) throw InternalError("sigma: imaginary part outside derivation span");
        for (std::size_t c = 0; c < m; ++c) phi(c, bk) = -(*coords)[c];
    }
    auto res = apply_modification(ambient, r_embedded, phi, "sigma(" + r.name() + ")");
    if (!complete_solvability_check(res.algebra))
        throw InternalError("sigma: result not completely solvable");
    return {std::move(res.algebra), std::move(res.map)};
}

namespace detail {

template <class T>
bool same_structure(const LieAlgebra<T>& a, const LieAlgebra<T>& b) {
    if (a.dim() != b.dim()) return false;
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = i + 1; j < a.dim(); ++j)
            if (!vecops::is_zero(vecops::sub(a.bracket_upper(i, j), b.bracket_upper(i, j))))
                return false;
    return true;
}

}  // namespace detail

/// One pass of the standard modification: the Killing-orthocomplement of
/// Der_skew(r, ip) inside r + Der_skew, on the basis {X_i + phi(X_i)}
/// indexed like r's own basis.
template <class T>
LieAlgebra<T> standard_modification(const LieAlgebra<T>& r, const Matrix<T>& gram) {
    if (!is_solvable(r)) throw NotSolvable(r.name());
    auto skew = skew_derivations(r, gram);
    const std::size_t m = skew.dim();
    const std::size_t n = r.dim();
    if (m == 0) return r;
    LieAlgebra<T> f = build_semidirect(r, skew.basis, {}, r.name() + "_iso");
    Matrix<T> bf = killing_form(f);
    // W = {v : B_f(v, d_i) = 0 for the skew directions d_0..d_{m-1}}
    Matrix<T> cond(m, m + n);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m + n; ++j) cond(i, j) = bf(i, j);
    auto w = nullspace(cond);
    if (w.size() != n) throw DegenerateComplement("wrong complement dimension");
    Span<T> check(m + n);
    for (std::size_t i = 0; i < m; ++i) check.insert(vecops::unit<T>(m + n, i));
    for (const auto& v : w)
        if (!check.insert(v)) throw DegenerateComplement("complement meets Der_skew");

    // express W as {X + phi(X)}: the r-parts of the W basis must span r
    Matrix<T> r_parts(n, n), d_parts(m, n);
    for (std::size_t c = 0; c < n; ++c)
        for (std::size_t i = 0; i < m + n; ++i) {
            if (i < m)
                d_parts(i, c) = w[c][i];
            else
                r_parts(i - m, c) = w[c][i];
        }
    auto rp_inv = inverse(r_parts);
    if (!rp_inv) throw DegenerateComplement("complement does not project onto r");
    Matrix<T> phi_top = d_parts * *rp_inv;  // phi on r's own basis, D-part only
    Matrix<T> phi(m + n, n);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) phi(i, j) = phi_top(i, j);
    std::vector<Vec<T>> r_embedded;
    for (std::size_t i = 0; i < n; ++i) r_embedded.push_back(vecops::unit<T>(m + n, m + i));
    auto res = apply_modification(f, r_embedded, phi, r.name() + "_std");
    return res.algebra;
}

/// Iterates standard_modification until the structure constants repeat.
template <class T>
std::pair<LieAlgebra<T>, std::size_t> standard_position_algebra(const LieAlgebra<T>& r,
                                                                const Matrix<T>& gram) {
    LieAlgebra<T> current = r;
    for (std::size_t steps = 0; steps <= 2; ++steps) {
        LieAlgebra<T> next = standard_modification(current, gram);
        if (detail::same_structure(next, current)) return {current, steps};
        current = std::move(next);
    }
    throw NoStabilization("standard modification exceeded two steps");
}

enum class EquivStatus { Equivalent, NotEquivalent, Unknown };

template <class T>
struct EquivalenceVerdict {
    EquivStatus status = EquivStatus::Unknown;
    std::optional<Matrix<T>> certificate;  // map on sigma-image coordinates
    std::string detail;
};

template <class T>
bool is_isomorphism(const LieAlgebra<T>& a, const LieAlgebra<T>& b, const Matrix<T>& c) {
    if (a.dim() != b.dim() || c.rows() != a.dim() || c.cols() != a.dim()) return false;
    if (!inverse(c)) return false;
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = i + 1; j < a.dim(); ++j) {
            Vec<T> lhs = c.apply(a.bracket_upper(i, j));
            Vec<T> rhs = b.bracket(c.column(i), c.column(j));
            if (!vecops::is_zero(vecops::sub(lhs, rhs))) return false;
        }
    return true;
}

namespace detail {

/// Monomial isomorphism search (scaled basis permutations), dim <= 5.
template <class T>
std::optional<Matrix<T>> monomial_isomorphism(const LieAlgebra<T>& a, const LieAlgebra<T>& b) {
    const std::size_t n = a.dim();
    if (n > 5) return std::nullopt;
    std::vector<T> scale_set = {scalar_traits<T>::one(), -scalar_traits<T>::one()};
    if (n <= 4) {
        scale_set.push_back(scalar_traits<T>::from_long(2));
        scale_set.push_back(scalar_traits<T>::one() / scalar_traits<T>::from_long(2));
        scale_set.push_back(-scalar_traits<T>::from_long(2));
        scale_set.push_back(-(scalar_traits<T>::one() / scalar_traits<T>::from_long(2)));
    }
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    do {
        std::vector<std::size_t> idx(n, 0);
        while (true) {
            Matrix<T> c(n, n);
            for (std::size_t i = 0; i < n; ++i) c(perm[i], i) = scale_set[idx[i]];
            if (is_isomorphism(a, b, c)) return c;
            std::size_t p = 0;
            while (p < n && ++idx[p] == scale_set.size()) idx[p++] = 0;
            if (p == n) break;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return std::nullopt;
}

}  // namespace detail

/// Equivalence of solvable algebras through their completely solvable
/// representatives; an optional user certificate maps sigma-image
/// coordinates of r1 to those of r2 (either direction accepted).
template <class T>
EquivalenceVerdict<T> equivalence_check(const LieAlgebra<T>& r1, const LieAlgebra<T>& r2,
                                        const std::optional<Matrix<T>>& certificate = {}) {
    EquivalenceVerdict<T> v;
    LieAlgebra<T> s1, s2;
    try {
        s1 = sigma(r1).algebra;
        s2 = sigma(r2).algebra;
    } catch (const IrrationalSpectrum& e) {
        v.status = EquivStatus::Unknown;
        v.detail = std::string("sigma unavailable: ") + e.what();
        return v;
    }
    auto diff = profile_difference(invariant_profile(s1), invariant_profile(s2));
    if (diff) {
        v.status = EquivStatus::NotEquivalent;
        v.detail = *diff;
        return v;
    }
    if (certificate) {
        if (is_isomorphism(s1, s2, *certificate)) {
            v.status = EquivStatus::Equivalent;
            v.certificate = *certificate;
            v.detail = "user certificate verified";
            return v;
        }
        if (certificate->is_square() && certificate->rows() == s1.dim()) {
            auto inv = inverse(*certificate);
            if (inv && is_isomorphism(s1, s2, *inv)) {
                v.status = EquivStatus::Equivalent;
                v.certificate = *inv;
                v.detail = "user certificate verified (inverse direction)";
                return v;
            }
        }
    }
    if (detail::same_structure(s1, s2)) {
        v.status = EquivStatus::Equivalent;
        v.certificate = Matrix<T>::identity(s1.dim());
        v.detail = "identical structure constants";
        return v;
    }
    if (auto c = detail::monomial_isomorphism(s1, s2)) {
        v.status = EquivStatus::Equivalent;
        v.certificate = *c;
        v.detail = "monomial isomorphism found";
        return v;
    }
    v.status = EquivStatus::Unknown;
    v.detail = "profiles agree; no isomorphism found within search limits";
    return v;
}

}  // namespace solvlie
