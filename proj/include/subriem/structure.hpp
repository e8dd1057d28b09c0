#pragma once

#include <array>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "jet.hpp"
#include "scalar.hpp"

namespace subriem {

/// Coefficients of [f2,f1] = f0 + c12_1 f1 + c12_2 f2, [f1,f0] = c10_1 f1 + c10_2 f2,
/// [f2,f0] = c20_1 f1 + c20_2 f2.  V is a scalar or a Jet.
template <class V>
struct StructureConstants {
    V c12_1{}, c12_2{}, c10_1{}, c10_2{}, c20_1{}, c20_2{};

    static constexpr std::array<const char*, 6> names = {"c12_1", "c12_2", "c10_1", "c10_2", "c20_1", "c20_2"};

    V& operator[](int k) {
        V* p[6] = {&c12_1, &c12_2, &c10_1, &c10_2, &c20_1, &c20_2};
        return *p[k];
    }
    const V& operator[](int k) const {
        const V* p[6] = {&c12_1, &c12_2, &c10_1, &c10_2, &c20_1, &c20_2};
        return *p[k];
    }

    template <class W, class F>
    StructureConstants<W> map(F&& f) const {
        StructureConstants<W> r;
        for (int k = 0; k < 6; ++k) r[k] = f((*this)[k]);
        return r;
    }
};

template <class V>
struct ContactInvariants {
    V chi{}, kappa{};
};

inline double max_abs(const Rational& v) { return magnitude(v); }
inline double max_abs(double v) { return magnitude(v); }
inline double max_abs(const Complex& v) { return magnitude(v); }
template <class T>
double max_abs(const Jet<T>& v) { return v.max_abs(); }

template <class T>
const T& value_at_base(const T& v) { return v; }
template <class T>
const T& value_at_base(const Jet<T>& v) { return v.value(); }

template <class T>
StructureConstants<T> make_constants(T c12_1, T c12_2, T c10_1, T c10_2, T c20_1, T c20_2) {
    return {c12_1, c12_2, c10_1, c10_2, c20_1, c20_2};
}

template <class To, class From>
StructureConstants<To> convert_constants(const StructureConstants<From>& sc) {
    return sc.template map<To>([](const From& v) {
        if constexpr (std::is_same_v<From, Rational>)
            return from_rational<To>(v);
        else
            return To(v);
    });
}

template <class T>
T contact_residual(const StructureConstants<T>& sc) { return sc.c10_1 + sc.c20_2; }

/// Jacobi residuals with all derivative terms set to zero.
template <class T>
std::array<T, 2> jacobi_residuals(const StructureConstants<T>& sc) {
    return {sc.c12_2 * sc.c10_1 - sc.c12_1 * sc.c10_2, sc.c12_2 * sc.c20_1 - sc.c12_1 * sc.c20_2};
}

template <class V>
V chi_radicand(const StructureConstants<V>& sc) {
    V h = sc.c10_2 + sc.c20_1;
    return h * h / typename scalar_of<V>::type(4) - sc.c10_1 * sc.c20_2;
}

namespace detail {
template <class T>
T clamp_radicand(const T& r, double tol) {
    if constexpr (is_exact_v<T>) {
        if (r < 0) throw NegativeRadicand("chi radicand " + r.str() + " is negative");
        return r;
    } else if constexpr (scalar_traits<T>::complex) {
        // complexified frames carry formal invariants; the principal root is taken
        if (magnitude(r) <= 1e-12) return T(0);
        return r;
    } else {
        if (r < -tol) throw NegativeRadicand("chi radicand " + std::to_string(r) + " is negative");
        if (magnitude(r) <= 1e-12) return T(0);
        return r;
    }
}
}  // namespace detail

/// Pure-constant invariants: derivative terms of kappa are taken as zero.
template <class T>
ContactInvariants<T> chi_kappa(const StructureConstants<T>& sc, double tol = scalar_traits<T>::default_tolerance) {
    T r = detail::clamp_radicand(chi_radicand(sc), tol);
    ContactInvariants<T> out;
    out.chi = scalar_sqrt(r);
    out.kappa = -sc.c12_1 * sc.c12_1 - sc.c12_2 * sc.c12_2 + (sc.c10_2 - sc.c20_1) / T(2);
    return out;
}

enum class CanonicalCase { chi_nonzero, chi_zero };

struct CanonicalReport {
    bool canonical = false;
    CanonicalCase which = CanonicalCase::chi_zero;
    std::vector<std::string> violations;
    bool orientation_normalized = true;  // c10_2 + c20_1 >= 0
    bool solv_sign_ok = true;            // c12_2 > 0 on the solv+ shape
};

inline const char* to_string(CanonicalCase c) { return c == CanonicalCase::chi_zero ? "chi_zero" : "chi_nonzero"; }

template <class T>
CanonicalReport validate_canonical(const StructureConstants<T>& sc, double tol = scalar_traits<T>::default_tolerance) {
    CanonicalReport rep;
    auto zero = [&](const T& v) { return is_zero(v, tol); };
    auto require_zero = [&](const T& v, const char* what) {
        if (!zero(v)) rep.violations.push_back(std::string(what) + " must vanish");
    };
    require_zero(contact_residual(sc), "contact compatibility: c10_1 + c20_2");
    auto jac = jacobi_residuals(sc);
    require_zero(jac[0], "c12_2*c10_1 - c12_1*c10_2");
    require_zero(jac[1], "c12_2*c20_1 - c12_1*c20_2");

    T radicand = chi_radicand(sc);
    rep.which = zero(radicand) ? CanonicalCase::chi_zero : CanonicalCase::chi_nonzero;
    require_zero(sc.c10_1, "c10_1");
    require_zero(sc.c20_2, "c20_2");
    if (rep.which == CanonicalCase::chi_zero) {
        require_zero(sc.c12_1, "c12_1");
        require_zero(sc.c12_2, "c12_2");
        require_zero(sc.c10_2 + sc.c20_1, "c10_2 + c20_1");
    }
    rep.orientation_normalized = real_value(sc.c10_2 + sc.c20_1) >= -tol;
    bool solv_shape = zero(sc.c12_1) && zero(sc.c20_1) && !zero(sc.c12_2);
    rep.solv_sign_ok = !solv_shape || real_value(sc.c12_2) > 0;
    rep.canonical = rep.violations.empty();
    return rep;
}

enum class AlgebraKind { h3, a_R_plus_R, solv_plus, solv_minus, se2, sh2, sl2_elliptic, sl2_hyperbolic, su2 };

inline const char* to_string(AlgebraKind k) {
    switch (k) {
        case AlgebraKind::h3: return "h3";
        case AlgebraKind::a_R_plus_R: return "a_R_plus_R";
        case AlgebraKind::solv_plus: return "solv_plus";
        case AlgebraKind::solv_minus: return "solv_minus";
        case AlgebraKind::se2: return "se2";
        case AlgebraKind::sh2: return "sh2";
        case AlgebraKind::sl2_elliptic: return "sl2_elliptic";
        case AlgebraKind::sl2_hyperbolic: return "sl2_hyperbolic";
        case AlgebraKind::su2: return "su2";
    }
    return "?";
}

struct LieAlgebraKind {
    AlgebraKind kind;
    bool unimodular;
    friend bool operator==(const LieAlgebraKind& a, const LieAlgebraKind& b) {
        return a.kind == b.kind && a.unimodular == b.unimodular;
    }
};

/// Position of (chi, kappa) on the unit circle chi^2 + kappa^2 = 1; (0, 0) for the Heisenberg point.
template <class T>
std::array<double, 2> normalized_invariants(const ContactInvariants<T>& inv) {
    double chi = real_value(inv.chi), kappa = real_value(inv.kappa);
    double r = std::hypot(chi, kappa);
    if (r == 0) return {0.0, 0.0};
    return {chi / r, kappa / r};
}

template <class T>
LieAlgebraKind classify(const StructureConstants<T>& sc, double tol = scalar_traits<T>::default_tolerance) {
    auto zero = [&](const T& v) { return is_zero(v, tol); };
    auto jac = jacobi_residuals(sc);
    if (!zero(contact_residual(sc)) || !zero(jac[0]) || !zero(jac[1]))
        throw Unclassifiable("structure constants violate the contact or Jacobi relations");
    const bool unimodular = zero(sc.c12_1) && zero(sc.c12_2);
    const auto inv = chi_kappa(sc, tol);
    const bool chi_zero = zero(inv.chi);

    if (!unimodular) {
        if (chi_zero) return {AlgebraKind::a_R_plus_R, false};
        if (!zero(sc.c10_1) || !zero(sc.c20_2)) throw Unclassifiable("non-canonical frame: c10_1 or c20_2 nonzero");
        if (zero(sc.c12_1) && zero(sc.c20_1)) return {AlgebraKind::solv_plus, false};
        if (zero(sc.c12_2) && zero(sc.c10_2)) return {AlgebraKind::solv_minus, false};
        throw Unclassifiable("non-unimodular constants match neither solv+ nor solv-");
    }
    if (!zero(sc.c10_1) || !zero(sc.c20_2)) throw Unclassifiable("non-canonical frame: c10_1 or c20_2 nonzero");
    if (chi_zero && zero(inv.kappa)) return {AlgebraKind::h3, true};

    if constexpr (is_exact_v<T>) {
        const T &chi = inv.chi, &kappa = inv.kappa;
        if (kappa > chi) return {AlgebraKind::su2, true};
        if (kappa == chi) return {AlgebraKind::se2, true};
        if (kappa == -chi) return {AlgebraKind::sh2, true};
        if (kappa < -chi) return {AlgebraKind::sl2_elliptic, true};
        return {AlgebraKind::sl2_hyperbolic, true};
    } else {
        auto [chi, kappa] = normalized_invariants(inv);
        if (std::abs(kappa - chi) <= tol) return {AlgebraKind::se2, true};
        if (std::abs(kappa + chi) <= tol) return {AlgebraKind::sh2, true};
        if (kappa > chi) return {AlgebraKind::su2, true};
        if (kappa < -chi) return {AlgebraKind::sl2_elliptic, true};
        return {AlgebraKind::sl2_hyperbolic, true};
    }
}

/// Closed-form Weyl entries for a canonical left-invariant frame.
template <class T>
std::array<T, 2> alpha_beta_left_invariant(const StructureConstants<T>& sc) {
    const T &a = sc.c12_1, &b = sc.c12_2, &p = sc.c10_2, &q = sc.c20_1;
    T alpha = b * b * p / T(12) - T(3) * p * p / T(8) + a * a * q / T(12) + T(3) * q * q / T(8);
    return {alpha, T(0)};
}

/// Reads a key = value document with keys c12_1 ... c20_2; missing keys default to 0.
inline StructureConstants<Rational> parse_structure_spec(std::string_view text) {
    StructureConstants<Rational> sc;
    std::array<bool, 6> seen{};
    std::istringstream in{std::string(text)};
    std::string line;
    int line_no = 0;
    auto trim = [](std::string s) {
        auto b = s.find_first_not_of(" \t\r");
        auto e = s.find_last_not_of(" \t\r");
        return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) throw ParseError("expected 'key = value'", line_no);
        std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
        int slot = -1;
        for (int k = 0; k < 6; ++k)
            if (key == StructureConstants<Rational>::names[k]) slot = k;
        if (slot < 0) throw ParseError("unknown key '" + key + "'", line_no);
        if (seen[slot]) throw ParseError("duplicate key '" + key + "'", line_no);
        seen[slot] = true;
        try {
            sc[slot] = parse_rational(value);
        } catch (const ParseError& e) {
            throw ParseError(e.what(), line_no);
        }
    }
    return sc;
}

inline StructureConstants<Rational> load_structure_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open structure file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_structure_spec(buf.str());
}

inline std::string format_structure_spec(const StructureConstants<Rational>& sc) {
    std::string out;
    for (int k = 0; k < 6; ++k) out += std::string(StructureConstants<Rational>::names[k]) + " = " + sc[k].str() + "\n";
    return out;
}

}  // namespace subriem
