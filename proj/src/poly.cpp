#include "solvlie/poly.hpp"

#include <algorithm>
#include <map>

namespace solvlie {

namespace {

// All positive divisors of |n|. Trial division; desk-scale coefficients
// only. Throws if |n| cannot be fully factored this way.
std::vector<mpz_class> positive_divisors(mpz_class n) {
    if (n < 0) n = -n;
    if (n == 0) throw std::logic_error("positive_divisors: zero");
    std::map<mpz_class, unsigned> fac;
    mpz_class c = n;
    for (mpz_class p = 2; p * p <= c && p < 1000000; p = (p == 2 ? mpz_class(3) : mpz_class(p + 2))) {
        while (c % p == 0) {
            ++fac[p];
            c /= p;
        }
    }
    if (c > 1) {
        // remaining cofactor is prime iff it is below (10^6)^2
        if (c >= mpz_class("1000000000000"))
            throw std::overflow_error("divisor enumeration: coefficient too large");
        ++fac[c];
    }
    std::vector<mpz_class> divs{1};
    for (const auto& [p, e] : fac) {
        std::size_t sz = divs.size();
        mpz_class pk = 1;
        for (unsigned k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < sz; ++i) divs.push_back(divs[i] * pk);
        }
    }
    std::sort(divs.begin(), divs.end());
    return divs;
}

// Clears denominators and content: returns primitive integer coefficients.
std::vector<mpz_class> primitive_integer_coeffs(const Poly<Rat>& p) {
    mpz_class l = 1;
    for (const auto& c : p.coeffs()) {
        mpz_class d = c.den();
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
        l = l / g * d;
    }
    std::vector<mpz_class> out;
    mpz_class content = 0;
    for (const auto& c : p.coeffs()) {
        mpz_class v = c.num() * (l / c.den());
        out.push_back(v);
        mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), v.get_mpz_t());
    }
    if (content > 1)
        for (auto& v : out) v /= content;
    return out;
}

}  // namespace

std::vector<std::pair<Rat, long>> rational_roots(const Poly<Rat>& p) {
    if (p.is_zero()) throw ZeroPolynomial();
    std::vector<std::pair<Rat, long>> roots;
    Poly<Rat> q = p;
    // roots at zero
    long mult0 = 0;
    while (q.degree() > 0 && q.coeff(0).is_zero()) {
        Vec<Rat> shifted(q.coeffs().begin() + 1, q.coeffs().end());
        q = Poly<Rat>(shifted);
        ++mult0;
    }
    if (mult0 > 0) roots.emplace_back(Rat(0), mult0);
    if (q.degree() <= 0) return roots;

    auto ic = primitive_integer_coeffs(q);
    auto nums = positive_divisors(ic.front());
    auto dens = positive_divisors(ic.back());
    std::vector<Rat> candidates;
    for (const auto& n : nums)
        for (const auto& d : dens) {
            Rat r(mpq_class(n, d));
            candidates.push_back(r);
            candidates.push_back(-r);
        }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    Poly<Rat> lin_x = Poly<Rat>::x();
    for (const auto& r : candidates) {
        if (!q.eval(r).is_zero()) continue;
        Poly<Rat> lin = lin_x - Poly<Rat>::constant(r);
        long mult = 0;
        while (q.eval(r).is_zero() && q.degree() > 0) {
            q = q.divmod(lin).first;
            ++mult;
        }
        roots.emplace_back(r, mult);
    }
    std::sort(roots.begin(), roots.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return roots;
}

std::vector<Poly<Rat>> rational_quadratic_factors(const Poly<Rat>& p) {
    std::vector<Poly<Rat>> factors;
    if (p.degree() < 2) return factors;
    Poly<Rat> q = p.monic();

    while (q.degree() >= 2) {
        // integerize via t = u/c so the polynomial becomes monic over Z
        mpz_class c = 1;
        for (const auto& a : q.coeffs()) {
            mpz_class d = a.den();
            mpz_class g;
            mpz_gcd(g.get_mpz_t(), c.get_mpz_t(), d.get_mpz_t());
            c = c / g * d;
        }
        const long deg = q.degree();
        std::vector<mpz_class> ic(deg + 1);
        mpz_class ck = 1;  // c^(deg - i)
        for (long i = deg; i >= 0; --i) {
            Rat a = q.coeff(static_cast<std::size_t>(i));
            ic[static_cast<std::size_t>(i)] = a.num() * (ck / a.den());
            ck *= c;
        }
        if (ic[0] == 0) throw std::logic_error("quadratic factors: zero constant term");

        // Cauchy bound for |sum of two roots|
        mpz_class maxabs = 0;
        for (const auto& v : ic) {
            mpz_class a = ::abs(v);
            if (a > maxabs) maxabs = a;
        }
        mpz_class pbound = 2 * (1 + maxabs);
        if (pbound > 2000000)
            throw std::overflow_error("quadratic factor enumeration: coefficients too large");

        bool found = false;
        auto qdivs = positive_divisors(ic[0]);
        for (const auto& qd : qdivs) {
            for (int qs : {1, -1}) {
                mpz_class Q = qs * qd;
                for (mpz_class P = -pbound; P <= pbound && !found; ++P) {
                    // candidate u^2 + P u + Q; map back to t = u/c
                    Poly<Rat> cand(
                        Vec<Rat>{Rat(mpq_class(Q, c * c)), Rat(mpq_class(P, c)), Rat(1)});
                    if (cand.divides(q)) {
                        factors.push_back(cand);
                        q = q.divmod(cand).first;
                        found = true;
                    }
                }
                if (found) break;
            }
            if (found) break;
        }
        if (!found) break;
    }
    return factors;
}

bool has_purely_imaginary_spectrum(const Poly<Rat>& p) {
    if (p.is_zero()) throw ZeroPolynomial();
    Poly<Rat> q = p;
    while (q.degree() > 0 && q.coeff(0).is_zero()) {
        Vec<Rat> shifted(q.coeffs().begin() + 1, q.coeffs().end());
        q = Poly<Rat>(shifted);
    }
    if (q.degree() == 0) return true;  // p = t^k
    for (long i = 1; i <= q.degree(); i += 2)
        if (!q.coeff(static_cast<std::size_t>(i)).is_zero()) return false;
    Vec<Rat> even;
    for (long i = 0; i <= q.degree(); i += 2) even.push_back(q.coeff(static_cast<std::size_t>(i)));
    Poly<Rat> g = squarefree_part(Poly<Rat>(even));
    if (real_root_count(g) != g.degree()) return false;
    // every root of g must be negative
    auto chain = sturm_chain(g);
    std::vector<int> at0, atinf;
    for (const auto& s : chain) {
        at0.push_back(s.eval(Rat(0)).sign());
        atinf.push_back(detail::sign_at_plus_inf(s));
    }
    long pos_roots = detail::variations(at0) - detail::variations(atinf);
    return pos_roots == 0 && !g.eval(Rat(0)).is_zero();
}

}  // namespace solvlie
