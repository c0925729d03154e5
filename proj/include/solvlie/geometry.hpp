#pragma once

#include "derivations.hpp"
#include "lie_algebra.hpp"
#include "ratfunc.hpp"

namespace solvlie {

namespace detail {

/// Ricci tensor r(b_a, b_b) by metric contractions in the given basis;
/// gram_inv must be the inverse of gram. Works over any exact field,
/// including Q(t).
template <class T>
Matrix<T> ricci_tensor(const LieAlgebra<T>& alg, const Matrix<T>& gram,
                       const Matrix<T>& gram_inv) {
    const std::size_t n = alg.dim();
    std::vector<std::vector<Vec<T>>> br(n);
    for (std::size_t a = 0; a < n; ++a) {
        br[a].resize(n);
        for (std::size_t b = 0; b < n; ++b) br[a][b] = alg.bracket_basis(a, b);
    }
    auto ip = [&](const Vec<T>& u, const Vec<T>& v) {
        T s = scalar_traits<T>::zero();
        for (std::size_t i = 0; i < n; ++i) {
            if (scalar_traits<T>::is_zero(u[i])) continue;
            for (std::size_t j = 0; j < n; ++j) s += u[i] * gram(i, j) * v[j];
        }
        return s;
    };

    // -1/2 sum_i <[x, e_i], [y, e_i]> over an orthonormal frame, written
    // with the inverse Gram as the frame resolution
    Matrix<T> m1(n, n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a; b < n; ++b) {
            T s = scalar_traits<T>::zero();
            for (std::size_t c = 0; c < n; ++c)
                for (std::size_t d = 0; d < n; ++d) {
                    if (scalar_traits<T>::is_zero(gram_inv(c, d))) continue;
                    s += gram_inv(c, d) * ip(br[a][c], br[b][d]);
                }
            T half = scalar_traits<T>::one() / scalar_traits<T>::from_long(2);
            m1(a, b) = m1(b, a) = -half * s;
        }

    // +1/4 sum_ij <[e_i, e_j], x> <[e_i, e_j], y>
    std::vector<std::vector<Vec<T>>> w(n);  // w[p][r] = G [b_p, b_r]
    for (std::size_t p = 0; p < n; ++p) {
        w[p].resize(n);
        for (std::size_t r = 0; r < n; ++r) w[p][r] = gram.apply(br[p][r]);
    }
    Matrix<T> m2(n, n);
    for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = 0; q < n; ++q) {
            if (scalar_traits<T>::is_zero(gram_inv(p, q))) continue;
            for (std::size_t r = 0; r < n; ++r)
                for (std::size_t s = 0; s < n; ++s) {
                    T f = gram_inv(p, q) * gram_inv(r, s);
                    if (scalar_traits<T>::is_zero(f)) continue;
                    for (std::size_t a = 0; a < n; ++a) {
                        if (scalar_traits<T>::is_zero(w[p][r][a])) continue;
                        for (std::size_t b = 0; b < n; ++b)
                            m2(a, b) += f * w[p][r][a] * w[q][s][b];
                    }
                }
        }
    T quarter = scalar_traits<T>::one() / scalar_traits<T>::from_long(4);
    m2 *= quarter;

    Matrix<T> killing = killing_form(alg);

    // mean curvature term: <H, x> = trace(ad x)
    Vec<T> tau(n);
    for (std::size_t a = 0; a < n; ++a) tau[a] = alg.ad_basis(a).trace();
    Vec<T> h = gram_inv.apply(tau);
    Matrix<T> adh = alg.ad(h);
    Matrix<T> s_adh = adh.transposed() * gram + gram * adh;

    T half = scalar_traits<T>::one() / scalar_traits<T>::from_long(2);
    return m1 + m2 - half * killing - half * s_adh;
}

template <class T>
Matrix<T> ricci_operator_unchecked(const LieAlgebra<T>& alg, const Matrix<T>& gram) {
    auto gram_inv = inverse(gram);
    if (!gram_inv) throw NotPositiveDefinite("singular gram matrix");
    return *gram_inv * ricci_tensor(alg, gram, *gram_inv);
}

}  // namespace detail

template <class T>
void require_inner_product(const LieAlgebra<T>& alg, const Matrix<T>& gram) {
    if (gram.rows() != alg.dim() || !gram.is_symmetric() || !is_positive_definite(gram))
        throw NotPositiveDefinite("inner product");
}

/// Ricci operator of the left-invariant metric with the given Gram
/// matrix, in the algebra's own basis.
template <class T>
Matrix<T> ricci_operator(const LieAlgebra<T>& alg, const Matrix<T>& gram) {
    require_inner_product(alg, gram);
    return detail::ricci_operator_unchecked(alg, gram);
}

namespace detail {

/// Covariant derivative operators nabla_{b_a} via the Koszul formula.
template <class T>
std::vector<Matrix<T>> levi_civita(const LieAlgebra<T>& alg, const Matrix<T>& gram,
                                   const Matrix<T>& gram_inv) {
    const std::size_t n = alg.dim();
    auto ip = [&](const Vec<T>& u, const Vec<T>& v) {
        T s = scalar_traits<T>::zero();
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) s += u[i] * gram(i, j) * v[j];
        return s;
    };
    T half = scalar_traits<T>::one() / scalar_traits<T>::from_long(2);
    std::vector<Matrix<T>> nabla(n, Matrix<T>(n, n));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            Vec<T> w(n);
            Vec<T> ea = vecops::unit<T>(n, a), eb = vecops::unit<T>(n, b);
            for (std::size_t c = 0; c < n; ++c) {
                Vec<T> ec = vecops::unit<T>(n, c);
                w[c] = half * (ip(alg.bracket_basis(a, b), ec) - ip(alg.bracket(eb, ec), ea) +
                               ip(alg.bracket(ec, ea), eb));
            }
            Vec<T> gamma = gram_inv.apply(w);
            for (std::size_t c = 0; c < n; ++c) nabla[a](c, b) = gamma[c];
        }
    return nabla;
}

template <class T>
Matrix<T> nabla_of(const std::vector<Matrix<T>>& nabla, const Vec<T>& x) {
    Matrix<T> m(nabla.size(), nabla.size());
    for (std::size_t a = 0; a < nabla.size(); ++a)
        if (!scalar_traits<T>::is_zero(x[a])) m += nabla[a] * x[a];
    return m;
}

template <class T>
Matrix<T> curvature(const std::vector<Matrix<T>>& nabla, const LieAlgebra<T>& alg,
                    std::size_t a, std::size_t b) {
    return nabla[a] * nabla[b] - nabla[b] * nabla[a] -
           nabla_of(nabla, alg.bracket_basis(a, b));
}

}  // namespace detail

/// Independent Ricci computation through the Levi-Civita connection and
/// the full curvature tensor.
template <class T>
Matrix<T> ricci_oracle_koszul(const LieAlgebra<T>& alg, const Matrix<T>& gram) {
    require_inner_product(alg, gram);
    const std::size_t n = alg.dim();
    auto gram_inv = *inverse(gram);
    auto nabla = detail::levi_civita(alg, gram, gram_inv);
    // ric(u, v) = trace(x -> R(x, u) v) on basis vectors
    Matrix<T> rt(n, n);
    for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t a = 0; a < n; ++a) {
            Matrix<T> r = detail::curvature(nabla, alg, a, u);
            for (std::size_t v = 0; v < n; ++v) rt(u, v) += r(a, v);
        }
    }
    return gram_inv * rt;
}

/// Full curvature-tensor zero check through the Koszul path.
template <class T>
bool is_flat(const LieAlgebra<T>& alg, const Matrix<T>& gram) {
    require_inner_product(alg, gram);
    auto gram_inv = *inverse(gram);
    auto nabla = detail::levi_civita(alg, gram, gram_inv);
    for (std::size_t a = 0; a < alg.dim(); ++a)
        for (std::size_t b = a + 1; b < alg.dim(); ++b)
            if (!detail::curvature(nabla, alg, a, b).is_zero_matrix()) return false;
    return true;
}

template <class T>
Matrix<T> ip_adjoint(const Matrix<T>& a, const Matrix<T>& gram, const Matrix<T>& gram_inv) {
    return gram_inv * a.transposed() * gram;
}

template <class T>
Matrix<T> ip_symmetrize(const Matrix<T>& a, const Matrix<T>& gram, const Matrix<T>& gram_inv) {
    T half = scalar_traits<T>::one() / scalar_traits<T>::from_long(2);
    return half * (a + ip_adjoint(a, gram, gram_inv));
}

/// Frobenius inner product of operators in an ip-orthonormal frame.
template <class T>
T operator_ip(const Matrix<T>& a, const Matrix<T>& b, const Matrix<T>& gram,
              const Matrix<T>& gram_inv) {
    return (a * gram_inv * b.transposed() * gram).trace();
}

template <class T>
struct SolitonCertificate {
    T c = scalar_traits<T>::zero();
    Matrix<T> d;
    T residual_sq = scalar_traits<T>::zero();
    bool algebraic = false;
};

/// Least-squares solve of Ric = c Id + sym_ip(D) over c and D in
/// Der(alg). On an exact zero residual with an ip-symmetric derivation
/// available, D is canonicalized to that symmetric representative.
template <class T>
SolitonCertificate<T> soliton_solve(const LieAlgebra<T>& alg, const Matrix<T>& gram) {
    require_inner_product(alg, gram);
    const std::size_t n = alg.dim();
    auto gram_inv = *inverse(gram);
    Matrix<T> ric = detail::ricci_operator_unchecked(alg, gram);
    auto der = derivation_algebra(alg);
    const std::size_t m = der.dim();

    std::vector<Matrix<T>> ops;
    ops.push_back(Matrix<T>::identity(n));
    for (const auto& d : der.basis) ops.push_back(ip_symmetrize(d, gram, gram_inv));
    Matrix<T> normal(m + 1, m + 1);
    Vec<T> rhs(m + 1);
    for (std::size_t i = 0; i <= m; ++i) {
        rhs[i] = operator_ip(ric, ops[i], gram, gram_inv);
        for (std::size_t j = i; j <= m; ++j)
            normal(i, j) = normal(j, i) = operator_ip(ops[i], ops[j], gram, gram_inv);
    }
    auto x = solve(normal, rhs);
    if (!x) throw InternalError("soliton normal equations inconsistent");

    SolitonCertificate<T> cert;
    cert.c = (*x)[0];
    Matrix<T> d(n, n);
    for (std::size_t k = 0; k < m; ++k) d += der.basis[k] * (*x)[k + 1];
    Matrix<T> err = ric;
    for (std::size_t i = 0; i < n; ++i) err(i, i) -= cert.c;
    err -= ip_symmetrize(d, gram, gram_inv);
    cert.residual_sq = operator_ip(err, err, gram, gram_inv);
    cert.d = d;
    if (scalar_traits<T>::is_zero(cert.residual_sq, is_exact_v<T> ? 1.0 : ric.max_abs())) {
        cert.residual_sq = scalar_traits<T>::zero();
        Matrix<T> dsym = ip_symmetrize(d, gram, gram_inv);
        if (is_derivation(alg, dsym)) {
            cert.d = dsym;
            cert.algebraic = true;
        }
    }
    return cert;
}

template <class T>
struct EinsteinReport {
    bool is_einstein = false;
    T c = scalar_traits<T>::zero();
    T residual_sq = scalar_traits<T>::zero();
};

template <class T>
EinsteinReport<T> einstein_check(const LieAlgebra<T>& alg, const Matrix<T>& gram) {
    require_inner_product(alg, gram);
    auto gram_inv = *inverse(gram);
    Matrix<T> ric = detail::ricci_operator_unchecked(alg, gram);
    EinsteinReport<T> rep;
    rep.c = ric.trace() / scalar_traits<T>::from_long(static_cast<long>(alg.dim()));
    Matrix<T> err = ric;
    for (std::size_t i = 0; i < alg.dim(); ++i) err(i, i) -= rep.c;
    rep.residual_sq = operator_ip(err, err, gram, gram_inv);
    rep.is_einstein =
        scalar_traits<T>::is_zero(rep.residual_sq, is_exact_v<T> ? 1.0 : ric.max_abs());
    return rep;
}

struct PreEinsteinDerivation {
    Matrix<Rat> phi;
    std::vector<std::pair<Rat, long>> eigenvalues;  // (value, multiplicity)
};

namespace detail {

/// Solves trace(phi A_l) = trace(A_l) for phi restricted to a given
/// operator subspace; returns the first solution of the affine system.
inline std::optional<Matrix<Rat>> trace_solve(const std::vector<Matrix<Rat>>& subspace,
                                              const std::vector<Matrix<Rat>>& der_basis,
                                              std::size_t n) {
    if (subspace.empty()) return std::nullopt;
    Matrix<Rat> sys(der_basis.size(), subspace.size());
    Vec<Rat> rhs(der_basis.size());
    for (std::size_t l = 0; l < der_basis.size(); ++l) {
        rhs[l] = der_basis[l].trace();
        for (std::size_t k = 0; k < subspace.size(); ++k)
            sys(l, k) = (subspace[k] * der_basis[l]).trace();
    }
    auto x = solve(sys, rhs);
    if (!x) return std::nullopt;
    Matrix<Rat> phi(n, n);
    for (std::size_t k = 0; k < subspace.size(); ++k) phi += subspace[k] * (*x)[k];
    return phi;
}

inline bool verify_pre_einstein(const LieAlgebra<Rat>& nil, const Matrix<Rat>& phi,
                                const std::vector<Matrix<Rat>>& der_basis,
                                PreEinsteinDerivation& out) {
    if (!is_derivation(nil, phi)) return false;
    for (const auto& a : der_basis)
        if ((phi * a).trace() != a.trace()) return false;
    if (!is_semisimple(phi)) return false;
    auto cp = char_poly(phi);
    auto roots = rational_roots(cp);
    long total = 0;
    for (const auto& [r, mult] : roots) total += mult;
    if (total != cp.degree()) return false;
    out.phi = phi;
    out.eigenvalues = roots;
    return true;
}

}  // namespace detail

/// Pre-Einstein derivation of a nilpotent algebra: the unique (up to
/// automorphism) semisimple rational derivation with
/// trace(phi A) = trace(A) for every derivation A.
inline PreEinsteinDerivation pre_einstein(const LieAlgebra<Rat>& nil) {
    if (!is_nilpotent(nil)) throw NotNilpotent(nil.name());
    const std::size_t n = nil.dim();
    auto der = derivation_algebra(nil);
    PreEinsteinDerivation out;

    // diagonal derivations first: a commuting semisimple family
    std::vector<Matrix<Rat>> diag;
    {
        Span<Rat> dspan = der.span();
        // solve the Leibniz system over diagonal matrices directly
        Matrix<Rat> sys(n * n * (n - 1) / 2, n);
        std::size_t row = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                const Vec<Rat>& c = nil.bracket_upper(i, j);
                for (std::size_t k = 0; k < n; ++k) {
                    // c_k (d_k - d_i - d_j) = 0
                    sys(row, k) += c[k];
                    sys(row, i) -= c[k];
                    sys(row, j) -= c[k];
                    ++row;
                }
            }
        for (auto& v : nullspace(sys)) diag.push_back(Matrix<Rat>::diagonal(v));
    }
    if (auto phi = detail::trace_solve(diag, der.basis, n))
        if (detail::verify_pre_einstein(nil, *phi, der.basis, out)) return out;

    // full affine system, then the real-semisimple Jordan component
    auto phi0 = detail::trace_solve(der.basis, der.basis, n);
    if (phi0) {
        auto js = jordan_chevalley(*phi0);
        if (detail::verify_pre_einstein(nil, js.real_part, der.basis, out)) return out;
        if (detail::verify_pre_einstein(nil, *phi0, der.basis, out)) return out;
    }
    throw TorusHeuristicFailed("no verified pre-Einstein derivation found");
}

struct EinsteinExtension {
    LieAlgebra<Rat> algebra;       // new generator first, then s
    Matrix<Rat> gram;              // extended inner product
    Rat t;                         // squared length of the new direction
    EinsteinReport<Rat> check;
    Matrix<Rat> delta_hat;         // the extending derivation on s
};

/// Rank-one Einstein extension of a non-Einstein solvsoliton: extend by
/// the pre-Einstein derivation of the nilradical (zero on the
/// ip-orthocomplement) and solve the new direction's squared length
/// exactly over Q(t).
inline EinsteinExtension einstein_extension(const LieAlgebra<Rat>& s, const Matrix<Rat>& gram,
                                            const SolitonCertificate<Rat>& cert) {
    require_inner_product(s, gram);
    if (!cert.residual_sq.is_zero() || !cert.algebraic)
        throw std::invalid_argument("einstein_extension: certificate is not an algebraic soliton");
    if (einstein_check(s, gram).is_einstein) throw AlreadyEinstein(s.name());

    const std::size_t n = s.dim();
    Span<Rat> nil = nilradical(s);
    auto nil_alg = subalgebra(s, nil);
    // ip-orthocomplement of the nilradical
    Matrix<Rat> cond(nil.dim(), n);
    for (std::size_t r = 0; r < nil.dim(); ++r) {
        Vec<Rat> gn = gram.apply(nil.basis()[r]);
        for (std::size_t j = 0; j < n; ++j) cond(r, j) = gn[j];
    }
    auto a_basis = nullspace(cond);
    if (a_basis.size() + nil.dim() != n)
        throw InternalError("einstein_extension: complement dimension");

    // ad(a)|n restricted to nilradical coordinates
    std::vector<Matrix<Rat>> ad_a_restricted;
    for (const auto& a : a_basis) {
        Matrix<Rat> ada = s.ad(a);
        Matrix<Rat> restr(nil.dim(), nil.dim());
        for (std::size_t j = 0; j < nil.dim(); ++j) {
            auto coords = nil.coordinates(ada.apply(nil.basis()[j]));
            if (!coords) throw InternalError("nilradical not ad-invariant");
            for (std::size_t i = 0; i < nil.dim(); ++i) restr(i, j) = (*coords)[i];
        }
        ad_a_restricted.push_back(restr);
    }

    auto commutes = [&](const Matrix<Rat>& phi) {
        for (const auto& ada : ad_a_restricted)
            if (!(phi * ada - ada * phi).is_zero_matrix()) return false;
        return true;
    };
    auto pe = pre_einstein(nil_alg);
    if (!commutes(pe.phi)) {
        // re-solve within the centralizer of ad(a)|n inside Der(n):
        // stack the commutation equations onto the Leibniz system
        auto der = derivation_algebra(nil_alg);
        const std::size_t nd = nil.dim();
        Matrix<Rat> leib = derivation_system(nil_alg);
        Matrix<Rat> stack(ad_a_restricted.size() * nd * nd + leib.rows(), nd * nd);
        std::size_t row = 0;
        for (const auto& ada : ad_a_restricted)
            for (std::size_t i = 0; i < nd; ++i)
                for (std::size_t j = 0; j < nd; ++j) {
                    // (X ada - ada X)(i,j) = 0, X vectorized column-major
                    for (std::size_t k = 0; k < nd; ++k) {
                        stack(row, k * nd + i) += ada(k, j);
                        stack(row, j * nd + k) -= ada(i, k);
                    }
                    ++row;
                }
        for (std::size_t i = 0; i < leib.rows(); ++i, ++row)
            for (std::size_t j = 0; j < nd * nd; ++j) stack(row, j) = leib(i, j);
        std::vector<Matrix<Rat>> central;
        for (auto& v : nullspace(stack)) central.push_back(Matrix<Rat>::unvectorize(v, nd, nd));
        auto phi = detail::trace_solve(central, der.basis, nd);
        PreEinsteinDerivation out;
        bool ok = false;
        if (phi) {
            auto js = jordan_chevalley(*phi);
            ok = detail::verify_pre_einstein(nil_alg, js.real_part, der.basis, out) ||
                 detail::verify_pre_einstein(nil_alg, *phi, der.basis, out);
        }
        if (!ok || !commutes(out.phi)) throw CommutationFailed("pre-Einstein vs ad(a)|n");
        pe = out;
    }

    // extend by zero on the complement
    std::vector<Vec<Rat>> cols = a_basis;
    for (const auto& v : nil.basis()) cols.push_back(v);
    Matrix<Rat> c_mat = Matrix<Rat>::from_columns(cols);
    Matrix<Rat> block(n, n);
    for (std::size_t i = 0; i < nil.dim(); ++i)
        for (std::size_t j = 0; j < nil.dim(); ++j)
            block(a_basis.size() + i, a_basis.size() + j) = pe.phi(i, j);
    Matrix<Rat> delta_hat = c_mat * block * *inverse(c_mat);
    if (!is_derivation(s, delta_hat))
        throw CommutationFailed("extended pre-Einstein map is not a derivation");

    LieAlgebra<Rat> s_ext = build_semidirect(s, {delta_hat}, {"delta"}, s.name() + "_ext");

    // solve the scale exactly over Q(t)
    LieAlgebra<RatFunc> s_ext_t = [&] {
        std::vector<Vec<RatFunc>> br;
        for (std::size_t i = 0; i <= n; ++i)
            for (std::size_t j = i + 1; j <= n; ++j) {
                Vec<RatFunc> v(n + 1);
                const Vec<Rat>& b = s_ext.bracket_upper(i, j);
                for (std::size_t k = 0; k <= n; ++k) v[k] = RatFunc(b[k]);
                br.push_back(std::move(v));
            }
        return LieAlgebra<RatFunc>("ext_t", std::vector<std::string>(s_ext.basis_names().begin(),
                                                                     s_ext.basis_names().end()),
                                   std::move(br), false);
    }();
    Matrix<RatFunc> gram_t(n + 1, n + 1);
    gram_t(0, 0) = RatFunc::t();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) gram_t(i + 1, j + 1) = RatFunc(gram(i, j));
    Matrix<RatFunc> ric_t = detail::ricci_operator_unchecked(s_ext_t, gram_t);
    RatFunc c_t = ric_t.trace() / scalar_traits<RatFunc>::from_long(static_cast<long>(n + 1));
    Poly<Rat> common;  // gcd of the numerators of Ric - cI
    for (std::size_t i = 0; i <= n; ++i)
        for (std::size_t j = 0; j <= n; ++j) {
            RatFunc e = ric_t(i, j);
            if (i == j) e -= c_t;
            if (e.is_zero()) continue;
            common = common.is_zero() ? e.num() : poly_gcd(common, e.num());
        }
    std::optional<Rat> t_found;
    if (common.is_zero()) {
        t_found = Rat(1);  // Einstein for every scale
    } else {
        for (const auto& [root, mult] : rational_roots(common)) {
            (void)mult;
            if (root.sign() > 0 && (!t_found || root < *t_found)) t_found = root;
        }
    }
    if (!t_found) throw NoEinsteinScale("no positive rational scale solves Ric = c Id");

    EinsteinExtension ext;
    ext.algebra = s_ext;
    ext.t = *t_found;
    ext.gram = Matrix<Rat>(n + 1, n + 1);
    ext.gram(0, 0) = *t_found;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) ext.gram(i + 1, j + 1) = gram(i, j);
    ext.delta_hat = delta_hat;
    ext.check = einstein_check(s_ext, ext.gram);
    if (!ext.check.is_einstein) throw NoEinsteinScale("solved scale failed verification");
    return ext;
}

}  // namespace solvlie
