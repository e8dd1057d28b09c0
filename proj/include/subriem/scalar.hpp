#pragma once

#include <cmath>
#include <complex>
#include <type_traits>

#include "rational.hpp"

namespace subriem {

using Complex = std::complex<double>;

template <class T>
struct scalar_traits;

template <>
struct scalar_traits<Rational> {
    static constexpr bool exact = true;
    static constexpr bool complex = false;
    static constexpr double default_tolerance = 0.0;
};

template <>
struct scalar_traits<double> {
    static constexpr bool exact = false;
    static constexpr bool complex = false;
    static constexpr double default_tolerance = 1e-9;
};

template <>
struct scalar_traits<Complex> {
    static constexpr bool exact = false;
    static constexpr bool complex = true;
    static constexpr double default_tolerance = 1e-9;
};

template <class T>
struct scalar_of {
    using type = T;
};

template <class T>
inline constexpr bool is_exact_v = scalar_traits<T>::exact;

inline double magnitude(const Rational& x) { return std::abs(to_double(x)); }
inline double magnitude(double x) { return std::abs(x); }
inline double magnitude(const Complex& x) { return std::abs(x); }

inline double real_value(const Rational& x) { return to_double(x); }
inline double real_value(double x) { return x; }
inline double real_value(const Complex& x) { return x.real(); }

inline double imag_value(const Rational&) { return 0.0; }
inline double imag_value(double) { return 0.0; }
inline double imag_value(const Complex& x) { return x.imag(); }

inline Rational abs_value(const Rational& x) { return x < 0 ? Rational(-x) : x; }
inline double abs_value(double x) { return std::abs(x); }
inline Complex abs_value(const Complex& x) { return std::abs(x); }

inline bool is_zero(const Rational& x, double) { return x == 0; }
inline bool is_zero(double x, double tol) { return std::abs(x) <= tol; }
inline bool is_zero(const Complex& x, double tol) { return std::abs(x) <= tol; }

template <class T>
T from_rational(const Rational& q) {
    if constexpr (std::is_same_v<T, Rational>)
        return q;
    else
        return T(to_double(q));
}

template <class T>
T from_complex_rational(const Rational& re, const Rational& im) {
    if constexpr (std::is_same_v<T, Complex>) {
        return Complex(to_double(re), to_double(im));
    } else {
        if (im != 0) throw DomainViolation("imaginary constant in a real scalar context");
        return from_rational<T>(re);
    }
}

/// Square root; exact inputs must be perfect squares.
inline Rational scalar_sqrt(const Rational& x) {
    auto r = exact_sqrt(x);
    if (!r) throw NotExact("square root of " + x.str() + " is not rational");
    return *r;
}
inline double scalar_sqrt(double x) { return std::sqrt(x); }
inline Complex scalar_sqrt(const Complex& x) { return std::sqrt(x); }

}  // namespace subriem
