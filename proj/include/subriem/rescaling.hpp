#pragma once

#include <optional>

#include "fefferman.hpp"

namespace subriem {

/// Frame of the structure rescaled by exp(2 phi).
inline Frame rescale_frame(const Frame& fr, const Expr& phi) {
    const Expr f1phi = fr.f1.apply(phi), f2phi = fr.f2.apply(phi);
    const Expr e1 = exp(-phi), e2 = exp(Expr(-2) * phi);
    CoordVectorField f0 = fr.f0 + fr.f1.scaled(Expr(2) * f2phi) - fr.f2.scaled(Expr(2) * f1phi);
    return {f0.scaled(e2), fr.f1.scaled(e1), fr.f2.scaled(e1)};
}

/// Jet-level counterpart of rescale_frame; phi needs one order more than the frame.
template <class T>
FrameJets<T> rescale_frame_jets(const FrameJets<T>& fj, const Jet<T>& phi) {
    const Jet<T> f1phi = fj.apply(1, phi), f2phi = fj.apply(2, phi);
    const Jet<T> e1 = exp(-phi), e2 = exp(phi * T(-2));
    FrameJets<T> out{fj.base, {}};
    for (int k = 0; k < 3; ++k) {
        out.f[0][k] = e2 * (fj.f[0][k] + T(2) * f2phi * fj.f[1][k] - T(2) * f1phi * fj.f[2][k]);
        out.f[1][k] = e1 * fj.f[1][k];
        out.f[2][k] = e1 * fj.f[2][k];
    }
    return out;
}

/// Transformed structure functions; derivatives of phi are taken along the original frame.
template <class C>
StructureConstants<typename C::value> rescale_constants(const StructureConstants<typename C::value>& c,
                                                        const typename C::value& phi, const C& calc) {
    using T = typename C::scalar;
    using V = typename C::value;
    const V p0 = calc.d(0, phi), p1 = calc.d(1, phi), p2 = calc.d(2, phi);
    const V p11 = calc.d(1, p1), p12 = calc.d(1, p2), p21 = calc.d(2, p1), p22 = calc.d(2, p2);
    const V e1 = exp(-phi), e2 = exp(phi * T(-2));
    StructureConstants<V> r;
    r.c12_1 = e1 * (c.c12_1 - T(3) * p2);
    r.c12_2 = e1 * (c.c12_2 + T(3) * p1);
    r.c10_1 = e2 * (T(-4) * p1 * p2 + c.c10_1 + T(2) * p12 + T(2) * c.c12_1 * p1 + p0);
    r.c10_2 = e2 * (T(4) * p1 * p1 + c.c10_2 - T(2) * p11 + T(2) * c.c12_2 * p1);
    r.c20_1 = e2 * (T(-4) * p2 * p2 + c.c20_1 + T(2) * p22 + T(2) * c.c12_1 * p2);
    r.c20_2 = e2 * (T(4) * p1 * p2 + c.c20_2 + T(2) * c.c12_2 * p2 - T(2) * p21 + p0);
    return r;
}

template <class T>
struct RescaledInvariants {
    StructureConstants<Jet<T>> constants;
    ContactInvariants<Jet<T>> invariants;
    /// Polynomial expressions in the derivatives of phi that vanish together with kappa_phi and chi_phi
    /// on unimodular inputs.
    Jet<T> kappa_expression, chi_expression;
    /// kappa_expression / kappa_phi at the base point, when kappa_phi does not vanish there.
    std::optional<T> kappa_factor;
};

/// Invariants of the structure rescaled by exp(2 phi), through the full jet pipeline.
template <class T>
RescaledInvariants<T> rescaled_invariants(const StructureConstants<Jet<T>>& c, const Jet<T>& phi,
                                          const FrameCalculus<T>& calc,
                                          double tol = scalar_traits<T>::default_tolerance) {
    RescaledInvariants<T> out;
    out.constants = rescale_constants(c, phi, calc);
    FrameCalculus<T> rescaled{rescale_frame_jets(calc.frame, phi)};
    out.invariants = chi_kappa(out.constants, rescaled, tol);

    const auto base = chi_kappa(c, calc, tol);
    const Jet<T> p1 = calc.d(1, phi), p2 = calc.d(2, phi);
    const Jet<T> p11 = calc.d(1, p1), p22 = calc.d(2, p2);
    out.kappa_expression = T(-4) * (p11 + p22 + p1 * p1 + p2 * p2) + base.kappa;
    out.chi_expression = T(2) * p1 * p1 - p11 - T(2) * p2 * p2 + p22 + base.chi;

    const T k = out.invariants.kappa.value();
    if (!is_zero(k, tol)) out.kappa_factor = out.kappa_expression.value() / k;

    const bool unimodular = is_zero(c.c12_1.value(), tol) && is_zero(c.c12_2.value(), tol) &&
                            c.c12_1.is_zero(tol) && c.c12_2.is_zero(tol);
    if (unimodular) {
        auto zero_at_base = [&](const Jet<T>& j) { return is_zero(j.value(), std::max(tol, 1e-8)); };
        if (zero_at_base(out.invariants.kappa) != zero_at_base(out.kappa_expression))
            throw IdentityViolation("kappa_rescaling_zero_set", magnitude(out.kappa_expression.value()));
        if (zero_at_base(out.invariants.chi) && zero_at_base(out.invariants.kappa) &&
            !zero_at_base(out.chi_expression))
            throw IdentityViolation("chi_rescaling_zero_set", magnitude(out.chi_expression.value()));
    }
    return out;
}

template <class T>
RescaledInvariants<T> rescaled_invariants(const Frame& fr, const Expr& phi, const Point<T>& p,
                                          int order = kDefaultJetOrder,
                                          double tol = scalar_traits<T>::default_tolerance) {
    auto fj = evaluate(fr, p, order + 3);
    FrameCalculus<T> calc{fj};
    return rescaled_invariants(structure_functions(fj, tol), phi.jet<T>(p, order + 4), calc, tol);
}

/// Largest difference between the structure functions of the rescaled frame and the transformed
/// structure functions of the original frame.
template <class T>
double rescaling_cross_check(const Frame& fr, const Expr& phi, const Point<T>& p, int order = kDefaultJetOrder,
                             double tol = scalar_traits<T>::default_tolerance) {
    auto direct = structure_functions(rescale_frame(fr, phi), p, order, tol);
    auto fj = evaluate(fr, p, order + 1);
    FrameCalculus<T> calc{fj};
    auto via = rescale_constants(structure_functions(fj, tol), phi.jet<T>(p, order + 2), calc);
    double r = 0;
    for (int k = 0; k < 6; ++k) {
        int n = std::min(direct[k].order(), via[k].order());
        r = std::max(r, (direct[k].truncated(n) - via[k].truncated(n)).max_abs());
    }
    return r;
}

/// |alpha_phi(p) - exp(-4 phi(p)) alpha(p)| and the same for beta.
template <class T>
std::array<double, 2> verify_alpha_beta_scaling(const Frame& fr, const Expr& phi, const Point<T>& p,
                                                double tol = 1e-8, int order = kDefaultJetOrder) {
    auto weyl_pair = [&](const Frame& f) {
        auto fj = evaluate(f, p, order + 1);
        FrameCalculus<T> calc{fj};
        auto cb = fefferman_curvature(structure_functions(fj), calc, scalar_traits<T>::default_tolerance, false);
        return std::array<T, 2>{cb.alpha.value(), cb.beta.value()};
    };
    const auto orig = weyl_pair(fr);
    const auto resc = weyl_pair(rescale_frame(fr, phi));
    const T factor = exp(phi.jet<T>(p, 0) * T(-4)).value();
    std::array<double, 2> r = {magnitude(resc[0] - factor * orig[0]), magnitude(resc[1] - factor * orig[1])};
    if (r[0] > tol || r[1] > tol)
        throw ScalingViolation("alpha/beta scaling residuals " + std::to_string(r[0]) + ", " + std::to_string(r[1]));
    return r;
}

}  // namespace subriem
