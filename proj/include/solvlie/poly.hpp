#pragma once

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "matrix.hpp"
#include "rational.hpp"

namespace solvlie {

struct ZeroPolynomial : std::domain_error {
    ZeroPolynomial() : std::domain_error("zero polynomial") {}
};

/// Univariate polynomial, coefficients stored low degree first.
template <class T>
class Poly {
public:
    Poly() {}
    Poly(std::initializer_list<T> coeffs) : c_(coeffs) { trim(); }
    explicit Poly(Vec<T> coeffs) : c_(std::move(coeffs)) { trim(); }
    static Poly constant(const T& x) { return Poly(Vec<T>{x}); }
    static Poly x() {
        return Poly(Vec<T>{scalar_traits<T>::zero(), scalar_traits<T>::one()});
    }

    bool is_zero() const { return c_.empty(); }
    // degree of the zero polynomial reported as -1
    long degree() const { return static_cast<long>(c_.size()) - 1; }
    const Vec<T>& coeffs() const { return c_; }
    T coeff(std::size_t k) const {
        return k < c_.size() ? c_[k] : scalar_traits<T>::zero();
    }
    T leading() const {
        if (c_.empty()) throw ZeroPolynomial();
        return c_.back();
    }

    T eval(const T& x) const {
        T r = scalar_traits<T>::zero();
        for (std::size_t i = c_.size(); i-- > 0;) r = r * x + c_[i];
        return r;
    }

    Matrix<T> eval(const Matrix<T>& m) const {
        Matrix<T> r = Matrix<T>::zero(m.rows(), m.cols());
        for (std::size_t i = c_.size(); i-- > 0;) {
            r = r * m;
            for (std::size_t d = 0; d < m.rows(); ++d) r(d, d) += c_[i];
        }
        return r;
    }

    Poly derivative() const {
        if (c_.size() <= 1) return Poly();
        Vec<T> d(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i)
            d[i - 1] = c_[i] * scalar_traits<T>::from_long(static_cast<long>(i));
        return Poly(std::move(d));
    }

    Poly monic() const {
        if (c_.empty()) throw ZeroPolynomial();
        Poly p = *this;
        T inv = scalar_traits<T>::one() / c_.back();
        for (auto& x : p.c_) x *= inv;
        p.c_.back() = scalar_traits<T>::one();
        return p;
    }

    Poly operator-() const {
        Poly p = *this;
        for (auto& x : p.c_) x = -x;
        return p;
    }
    friend Poly operator+(const Poly& a, const Poly& b) {
        Vec<T> r(std::max(a.c_.size(), b.c_.size()), scalar_traits<T>::zero());
        for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] += b.c_[i];
        return Poly(std::move(r));
    }
    friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return Poly();
        Vec<T> r(a.c_.size() + b.c_.size() - 1, scalar_traits<T>::zero());
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        return Poly(std::move(r));
    }
    friend Poly operator*(const Poly& a, const T& s) {
        Poly p = a;
        for (auto& x : p.c_) x *= s;
        p.trim();
        return p;
    }
    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    /// Euclidean division; returns {quotient, remainder}.
    std::pair<Poly, Poly> divmod(const Poly& d) const {
        if (d.is_zero()) throw ZeroPolynomial();
        Poly r = *this;
        Poly q;
        q.c_.assign(degree() >= d.degree() ? degree() - d.degree() + 1 : 0,
                    scalar_traits<T>::zero());
        T lead_inv = scalar_traits<T>::one() / d.leading();
        while (!r.is_zero() && r.degree() >= d.degree()) {
            std::size_t k = static_cast<std::size_t>(r.degree() - d.degree());
            T f = r.c_.back() * lead_inv;
            q.c_[k] = f;
            for (std::size_t i = 0; i < d.c_.size(); ++i) r.c_[k + i] -= f * d.c_[i];
            r.c_.pop_back();  // leading term cancels by construction
            r.trim();
        }
        q.trim();
        return {q, r};
    }

    bool divides(const Poly& p) const { return p.divmod(*this).second.is_zero(); }

private:
    void trim() {
        while (!c_.empty() && scalar_traits<T>::is_zero(c_.back(), coeff_scale())) c_.pop_back();
    }
    double coeff_scale() const {
        if constexpr (is_exact_v<T>) return 1.0;
        double m = 1.0;
        for (const auto& x : c_) m = std::max(m, scalar_traits<T>::abs_double(x));
        return m;
    }

    Vec<T> c_;
};

template <class T>
Poly<T> poly_gcd(Poly<T> a, Poly<T> b) {
    if (a.is_zero()) return b.is_zero() ? b : b.monic();
    if (b.is_zero()) return a.monic();
    while (!b.is_zero()) {
        Poly<T> r = a.divmod(b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

template <class T>
Poly<T> squarefree_part(const Poly<T>& p) {
    if (p.is_zero()) throw ZeroPolynomial();
    if (p.degree() == 0) return Poly<T>::constant(scalar_traits<T>::one());
    Poly<T> g = poly_gcd(p, p.derivative());
    return p.divmod(g).first.monic();
}

/// Characteristic polynomial det(tI - m) by the Faddeev-LeVerrier recursion.
template <class T>
Poly<T> char_poly(const Matrix<T>& m) {
    if (!m.is_square()) throw std::invalid_argument("char_poly: non-square");
    const std::size_t n = m.rows();
    Vec<T> c(n + 1, scalar_traits<T>::zero());
    c[n] = scalar_traits<T>::one();
    Matrix<T> mk = Matrix<T>::identity(n);
    for (std::size_t k = 1; k <= n; ++k) {
        mk = m * mk;
        T ck = -(mk.trace() / scalar_traits<T>::from_long(static_cast<long>(k)));
        c[n - k] = ck;
        for (std::size_t i = 0; i < n; ++i) mk(i, i) += ck;
    }
    return Poly<T>(std::move(c));
}

// ---- Exact real-root machinery (rational coefficients only) ----

namespace detail {
inline int sign_at_plus_inf(const Poly<Rat>& p) { return p.leading().sign(); }
inline int sign_at_minus_inf(const Poly<Rat>& p) {
    int s = p.leading().sign();
    return (p.degree() % 2 == 0) ? s : -s;
}
}  // namespace detail

/// Sturm chain of p (p assumed nonzero).
inline std::vector<Poly<Rat>> sturm_chain(const Poly<Rat>& p) {
    std::vector<Poly<Rat>> chain;
    chain.push_back(p);
    if (p.degree() >= 1) {
        chain.push_back(p.derivative());
        while (chain.back().degree() >= 1) {
            Poly<Rat> r = chain[chain.size() - 2].divmod(chain.back()).second;
            if (r.is_zero()) break;
            chain.push_back(-r);
        }
    }
    return chain;
}

namespace detail {
inline int variations(const std::vector<int>& signs) {
    int v = 0, prev = 0;
    for (int s : signs) {
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++v;
        prev = s;
    }
    return v;
}
}  // namespace detail

/// Number of distinct real roots of p (multiplicity discarded).
inline long real_root_count(const Poly<Rat>& p) {
    if (p.is_zero()) throw ZeroPolynomial();
    if (p.degree() == 0) return 0;
    auto chain = sturm_chain(p);
    std::vector<int> lo, hi;
    for (const auto& q : chain) {
        lo.push_back(detail::sign_at_minus_inf(q));
        hi.push_back(detail::sign_at_plus_inf(q));
    }
    return detail::variations(lo) - detail::variations(hi);
}

/// Distinct real roots of p in the open interval (a, b).
inline long real_root_count_in(const Poly<Rat>& p, const Rat& a, const Rat& b) {
    if (p.is_zero()) throw ZeroPolynomial();
    if (p.degree() == 0) return 0;
    auto chain = sturm_chain(p);
    std::vector<int> lo, hi;
    for (const auto& q : chain) {
        lo.push_back(q.eval(a).sign());
        hi.push_back(q.eval(b).sign());
    }
    long n = detail::variations(lo) - detail::variations(hi);
    if (p.eval(b).is_zero()) --n;  // Sturm counts roots in (a, b]
    return n;
}

/// All rational roots of a rational polynomial, each with multiplicity,
/// sorted ascending.
std::vector<std::pair<Rat, long>> rational_roots(const Poly<Rat>& p);

/// Monic quadratic factors over Q of a rational polynomial with no
/// rational roots, found by bounded integer enumeration after clearing
/// denominators. Factors are returned with multiplicity peeled off one
/// at a time by the caller.
std::vector<Poly<Rat>> rational_quadratic_factors(const Poly<Rat>& p);

/// True iff every root of p is purely imaginary or zero: p must be
/// t^k * q(t^2) with all real roots of q nonpositive.
bool has_purely_imaginary_spectrum(const Poly<Rat>& p);

/// True iff all roots of p are real.
inline bool has_real_spectrum(const Poly<Rat>& p) {
    Poly<Rat> sf = squarefree_part(p);
    return real_root_count(sf) == sf.degree();
}

}  // namespace solvlie
