#pragma once

#include <atomic>
#include <cmath>
#include <string>

#include "rational.hpp"

namespace solvlie {

/// Default relative tolerance for rank decisions on the floating path.
/// The CLI sets this once at startup; library code only reads it.
inline std::atomic<double>& float_tolerance() {
    static std::atomic<double> tol{1e-9};
    return tol;
}

template <class T>
struct scalar_traits;

template <>
struct scalar_traits<Rat> {
    static constexpr bool exact = true;
    static Rat zero() { return Rat(0); }
    static Rat one() { return Rat(1); }
    static bool is_zero(const Rat& x, double /*scale*/ = 1.0) { return x.is_zero(); }
    static double to_double(const Rat& x) { return x.to_double(); }
    static Rat from_long(long n) { return Rat(n); }
    static std::string str(const Rat& x) { return x.str(); }
    static double abs_double(const Rat& x) { return std::fabs(x.to_double()); }
};

template <>
struct scalar_traits<double> {
    static constexpr bool exact = false;
    static double zero() { return 0.0; }
    static double one() { return 1.0; }
    /// Zero test relative to a caller-supplied magnitude scale.
    static bool is_zero(double x, double scale = 1.0) {
        double tol = float_tolerance().load();
        return std::fabs(x) <= tol * (scale > 1.0 ? scale : 1.0);
    }
    static double to_double(double x) { return x; }
    static double from_long(long n) { return static_cast<double>(n); }
    static std::string str(double x) { return std::to_string(x); }
    static double abs_double(double x) { return std::fabs(x); }
};

template <class T>
inline constexpr bool is_exact_v = scalar_traits<T>::exact;

}  // namespace solvlie
