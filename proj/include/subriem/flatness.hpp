#pragma once

#include <optional>

#include "rescaling.hpp"

namespace subriem {

enum class FlatFamily {
    nonunimodular_i,
    nonunimodular_ii,
    unimodular_i,
    unimodular_ii,
    unimodular_iii,
    heisenberg,
    not_flat
};

inline const char* to_string(FlatFamily f) {
    switch (f) {
        case FlatFamily::nonunimodular_i: return "nonunimodular_i";
        case FlatFamily::nonunimodular_ii: return "nonunimodular_ii";
        case FlatFamily::unimodular_i: return "unimodular_i";
        case FlatFamily::unimodular_ii: return "unimodular_ii";
        case FlatFamily::unimodular_iii: return "unimodular_iii";
        case FlatFamily::heisenberg: return "heisenberg";
        case FlatFamily::not_flat: return "not_flat";
    }
    return "?";
}

template <class T>
struct FlatnessVerdict {
    bool fefferman_flat = false;
    FlatFamily family = FlatFamily::not_flat;
    T alpha{};
    std::optional<Expr> phi;
    std::optional<Frame> chart;
};

/// |alpha| small relative to the size of the invariants.
template <class T>
bool alpha_vanishes(const T& alpha, const ContactInvariants<T>& inv) {
    if constexpr (is_exact_v<T>) {
        return alpha == 0;
    } else {
        const double chi = magnitude(inv.chi), kappa = magnitude(inv.kappa);
        return magnitude(alpha) <= 1e-10 * (1 + chi * chi + kappa * kappa);
    }
}

namespace detail {

template <class T>
Rational to_exact(const T& v) {
    if constexpr (is_exact_v<T>)
        return v;
    else
        return Rational(real_value(v));
}

/// Constant phi_c with exp(-2 phi_c) = scale.
inline Expr constant_shift(const Rational& scale) {
    if (scale == 1) return Expr(0);
    return Expr(make_rational(-1, 2)) * log(Expr(scale));
}

}  // namespace detail

/// Coordinate chart realizing a flat family with the given constants.
template <class T>
Frame flattening_chart(FlatFamily family, const StructureConstants<T>& sc) {
    const auto inv = chi_kappa(sc);
    switch (family) {
        case FlatFamily::heisenberg: return model_frame(ModelKind::heisenberg);
        case FlatFamily::nonunimodular_i:
            return solv_plus_frame(detail::to_exact(sc.c12_2), detail::to_exact(sc.c10_2));
        case FlatFamily::nonunimodular_ii:
            return solv_minus_frame(detail::to_exact(sc.c12_1), detail::to_exact(sc.c20_1));
        case FlatFamily::unimodular_i:
        case FlatFamily::unimodular_ii:
            return rescale_frame(model_frame(family == FlatFamily::unimodular_i ? ModelKind::unimodular_i
                                                                                : ModelKind::unimodular_ii),
                                 detail::constant_shift(detail::to_exact(abs_value(inv.kappa))));
        case FlatFamily::unimodular_iii:
            return rescale_frame(sl2_real_frame(), detail::constant_shift(detail::to_exact(inv.chi)));
        case FlatFamily::not_flat: break;
    }
    throw NotFlat("structure is not conformally flat");
}

/// Rescaling function flattening the family in its chart.
template <class T>
Expr flattening_phi(FlatFamily family, const StructureConstants<T>& sc) {
    const Expr x = Expr::x(), y = Expr::y();
    const auto inv = chi_kappa(sc);
    switch (family) {
        case FlatFamily::heisenberg: return Expr(0);
        case FlatFamily::nonunimodular_i: return -(Expr(detail::to_exact(sc.c12_2) / 3) * x);
        case FlatFamily::nonunimodular_ii: return Expr(detail::to_exact(sc.c12_1) / 3) * x;
        case FlatFamily::unimodular_i:
        case FlatFamily::unimodular_ii:
            return Expr(make_rational(1, 2)) * y - detail::constant_shift(detail::to_exact(abs_value(inv.kappa)));
        case FlatFamily::unimodular_iii: {
            const auto [c, d] = sl2_lower_row();
            return Expr(make_rational(-1, 2)) * log(pow(c, 4) + pow(d, 4)) -
                   detail::constant_shift(detail::to_exact(inv.chi));
        }
        case FlatFamily::not_flat: break;
    }
    throw NotFlat("structure is not conformally flat");
}

template <class T>
FlatnessVerdict<T> flatness_verdict(const StructureConstants<T>& sc, double tol = scalar_traits<T>::default_tolerance) {
    const auto rep = validate_canonical(sc, tol);
    if (!rep.canonical) throw NotCanonical("flatness needs canonical constants");
    const auto inv = chi_kappa(sc, tol);
    FlatnessVerdict<T> v;
    v.alpha = alpha_beta_left_invariant(sc)[0];
    v.fefferman_flat = alpha_vanishes(v.alpha, inv);
    if (!v.fefferman_flat) return v;

    auto zero = [&](const T& a) { return is_zero(a, tol); };
    bool all_zero = true;
    for (int k = 0; k < 6; ++k) all_zero = all_zero && zero(sc[k]);
    const bool unimodular = zero(sc.c12_1) && zero(sc.c12_2);
    if (all_zero)
        v.family = FlatFamily::heisenberg;
    else if (!unimodular && zero(sc.c12_1) && zero(sc.c20_1))
        v.family = FlatFamily::nonunimodular_i;
    else if (!unimodular && zero(sc.c12_2) && zero(sc.c10_2))
        v.family = FlatFamily::nonunimodular_ii;
    else if (unimodular && zero(inv.chi))
        v.family = real_value(inv.kappa) < 0 ? FlatFamily::unimodular_i : FlatFamily::unimodular_ii;
    else if (unimodular && zero(inv.kappa))
        v.family = FlatFamily::unimodular_iii;
    else
        throw NotCanonical("alpha vanishes outside the known flat families");
    v.phi = flattening_phi(v.family, sc);
    v.chart = flattening_chart(v.family, sc);
    return v;
}

/// f1(f1 phi) + f2(f2 phi) + c12_2 f1(phi) - c12_1 f2(phi) + (c12_2)^2 / 3.
template <class C>
typename C::value sublaplacian_residual(const typename C::value& phi, const StructureConstants<typename C::value>& c,
                                        const C& calc) {
    using T = typename C::scalar;
    const auto p1 = calc.d(1, phi), p2 = calc.d(2, phi);
    return calc.d(1, p1) + calc.d(2, p2) + c.c12_2 * p1 - c.c12_1 * p2 + c.c12_2 * c.c12_2 / T(3);
}

template <class T>
Jet<T> sublaplacian_residual(const Expr& phi, const Frame& fr, const Point<T>& p, int order = kDefaultJetOrder) {
    auto fj = evaluate(fr, p, order + 1);
    FrameCalculus<T> calc{fj};
    return sublaplacian_residual(phi.jet<T>(p, order + 2), structure_functions(fj), calc);
}

}  // namespace subriem
