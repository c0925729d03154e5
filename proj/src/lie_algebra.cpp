#include "solvlie/lie_algebra.hpp"

#include <algorithm>
#include <sstream>

namespace solvlie {

namespace {

template <class T>
std::string char_poly_string(const Matrix<T>& m) {
    std::ostringstream os;
    auto p = char_poly(m);
    for (std::size_t i = 0; i < p.coeffs().size(); ++i) {
        if (i) os << ' ';
        os << scalar_traits<T>::str(p.coeffs()[i]);
    }
    return os.str();
}

/// Complement of the nilradical used for informational spectrum data:
/// the Killing orthocomplement when it is transversal, else the echelon
/// complement.
template <class T>
std::vector<Vec<T>> canonical_complement(const LieAlgebra<T>& alg, const Span<T>& nil) {
    const std::size_t n = alg.dim();
    if (nil.dim() == n) return {};
    Matrix<T> b = killing_form(alg);
    Matrix<T> cond(nil.dim(), n);
    for (std::size_t r = 0; r < nil.dim(); ++r) {
        Vec<T> bn = b.apply(nil.basis()[r]);
        for (std::size_t j = 0; j < n; ++j) cond(r, j) = bn[j];
    }
    auto ortho = nullspace(cond);
    if (ortho.size() == n - nil.dim()) {
        bool transversal = true;
        Span<T> joint = nil;
        for (const auto& v : ortho)
            if (!joint.insert(v)) transversal = false;
        if (transversal) return ortho;
    }
    return echelon_complement(nil);
}

}  // namespace

template <class T>
InvariantProfile invariant_profile(const LieAlgebra<T>& alg) {
    InvariantProfile p;
    p.dim = alg.dim();
    auto derived = characteristic_series(alg, SeriesKind::Derived);
    auto lower = characteristic_series(alg, SeriesKind::LowerCentral);
    for (const auto& s : derived) p.derived_dims.push_back(s.dim());
    for (const auto& s : lower) p.lower_central_dims.push_back(s.dim());
    p.solvable = derived.back().dim() == 0;
    p.nilpotent = lower.back().dim() == 0;
    p.center_dim = center(alg).dim();
    p.unimodular = is_unimodular(alg);
    auto sig = signature(killing_form(alg));
    p.killing_rank = sig.positive + sig.negative;
    p.killing_positive = sig.positive;
    p.killing_negative = sig.negative;
    p.derivation_dim = alg.dim() * alg.dim() - rank(derivation_system(alg));
    if (p.solvable) {
        Span<T> nil = nilradical(alg);
        p.nilradical_dim = nil.dim();
        p.completely_solvable = complete_solvability_check(alg);
        for (const auto& c : canonical_complement(alg, nil))
            p.complement_ad_char_polys.push_back(char_poly_string(alg.ad(c)));
        std::sort(p.complement_ad_char_polys.begin(), p.complement_ad_char_polys.end());
    }
    return p;
}

template InvariantProfile invariant_profile<Rat>(const LieAlgebra<Rat>&);
template InvariantProfile invariant_profile<double>(const LieAlgebra<double>&);

namespace {

template <class V>
std::optional<std::string> diff_field(const char* name, const V& a, const V& b) {
    if (a == b) return std::nullopt;
    std::ostringstream os;
    os << name;
    return os.str();
}

}  // namespace

std::optional<std::string> InvariantProfile::first_difference(const InvariantProfile& a,
                                                              const InvariantProfile& b) {
    if (auto d = diff_field("dim", a.dim, b.dim)) return d;
    if (auto d = diff_field("derived_dims", a.derived_dims, b.derived_dims)) return d;
    if (auto d = diff_field("lower_central_dims", a.lower_central_dims, b.lower_central_dims))
        return d;
    if (auto d = diff_field("center_dim", a.center_dim, b.center_dim)) return d;
    if (auto d = diff_field("solvable", a.solvable, b.solvable)) return d;
    if (auto d = diff_field("nilpotent", a.nilpotent, b.nilpotent)) return d;
    if (auto d = diff_field("nilradical_dim", a.nilradical_dim, b.nilradical_dim)) return d;
    if (auto d = diff_field("unimodular", a.unimodular, b.unimodular)) return d;
    if (auto d = diff_field("completely_solvable", a.completely_solvable, b.completely_solvable))
        return d;
    if (auto d = diff_field("killing_rank", a.killing_rank, b.killing_rank)) return d;
    if (auto d = diff_field("killing_positive", a.killing_positive, b.killing_positive)) return d;
    if (auto d = diff_field("killing_negative", a.killing_negative, b.killing_negative)) return d;
    if (auto d = diff_field("derivation_dim", a.derivation_dim, b.derivation_dim)) return d;
    return std::nullopt;
}

std::optional<std::string> profile_difference(const InvariantProfile& a,
                                              const InvariantProfile& b) {
    return InvariantProfile::first_difference(a, b);
}

}  // namespace solvlie
