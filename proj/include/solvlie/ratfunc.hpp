#pragma once

#include <sstream>

#include "poly.hpp"

namespace solvlie {

/// Rational function over Q in one variable t, kept in lowest terms with
/// monic denominator. Supports enough field arithmetic to run the exact
/// linear-algebra kernels over Q(t).
class RatFunc {
public:
    RatFunc() : den_(Poly<Rat>::constant(Rat(1))) {}
    RatFunc(const Rat& c) : num_(Poly<Rat>::constant(c)), den_(Poly<Rat>::constant(Rat(1))) {
        if (c.is_zero()) num_ = Poly<Rat>();
    }
    explicit RatFunc(Poly<Rat> num, Poly<Rat> den = Poly<Rat>::constant(Rat(1)))
        : num_(std::move(num)), den_(std::move(den)) {
        if (den_.is_zero()) throw std::domain_error("RatFunc: zero denominator");
        normalize();
    }
    static RatFunc t() { return RatFunc(Poly<Rat>::x()); }

    const Poly<Rat>& num() const { return num_; }
    const Poly<Rat>& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }

    /// Evaluation where the denominator does not vanish.
    Rat eval(const Rat& x) const {
        Rat d = den_.eval(x);
        if (d.is_zero()) throw std::domain_error("RatFunc: pole");
        return num_.eval(x) / d;
    }

    RatFunc operator-() const {
        RatFunc r = *this;
        r.num_ = -r.num_;
        return r;
    }
    friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
        return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
        return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
        if (b.is_zero()) throw std::domain_error("RatFunc: division by zero");
        return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
    }
    RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
    RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
    RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
    RatFunc& operator/=(const RatFunc& o) { return *this = *this / o; }

    friend bool operator==(const RatFunc& a, const RatFunc& b) {
        return a.num_.coeffs() == b.num_.coeffs() && a.den_.coeffs() == b.den_.coeffs();
    }
    friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

    std::string str() const {
        auto poly_str = [](const Poly<Rat>& p) {
            std::ostringstream os;
            os << "[";
            for (std::size_t i = 0; i < p.coeffs().size(); ++i) {
                if (i) os << " ";
                os << p.coeffs()[i].str();
            }
            os << "]";
            return os.str();
        };
        return poly_str(num_) + "/" + poly_str(den_);
    }

private:
    void normalize() {
        if (num_.is_zero()) {
            den_ = Poly<Rat>::constant(Rat(1));
            return;
        }
        Poly<Rat> g = poly_gcd(num_, den_);
        if (g.degree() > 0) {
            num_ = num_.divmod(g).first;
            den_ = den_.divmod(g).first;
        }
        Rat lead = den_.leading();
        Rat inv = Rat(1) / lead;
        Vec<Rat> nc = num_.coeffs(), dc = den_.coeffs();
        for (auto& x : nc) x *= inv;
        for (auto& x : dc) x *= inv;
        num_ = Poly<Rat>(std::move(nc));
        den_ = Poly<Rat>(std::move(dc));
    }

    Poly<Rat> num_;
    Poly<Rat> den_;
};

template <>
struct scalar_traits<RatFunc> {
    static constexpr bool exact = true;
    static RatFunc zero() { return RatFunc(); }
    static RatFunc one() { return RatFunc(Rat(1)); }
    static bool is_zero(const RatFunc& x, double /*scale*/ = 1.0) { return x.is_zero(); }
    static double to_double(const RatFunc&) {
        throw std::logic_error("RatFunc has no numeric value");
    }
    static RatFunc from_long(long n) { return RatFunc(Rat(n)); }
    static std::string str(const RatFunc& x) { return x.str(); }
    static double abs_double(const RatFunc& x) { return x.is_zero() ? 0.0 : 1.0; }
};

}  // namespace solvlie
