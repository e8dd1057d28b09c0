#pragma once

#include <array>

#include "expr.hpp"
#include "structure.hpp"

namespace subriem {

template <class T>
using Point = std::array<T, 3>;

template <class T>
using VecJet = std::array<Jet<T>, 3>;

/// Vector field sum_k c[k] d/dx_k with closed-form coefficients.
struct CoordVectorField {
    std::array<Expr, 3> c;

    template <class T>
    VecJet<T> jets(const Point<T>& p, int order) const {
        return {c[0].jet<T>(p, order), c[1].jet<T>(p, order), c[2].jet<T>(p, order)};
    }

    /// Symbolic directional derivative X(f).
    Expr apply(const Expr& f) const { return c[0] * f.diff(0) + c[1] * f.diff(1) + c[2] * f.diff(2); }

    CoordVectorField scaled(const Expr& s) const { return {{s * c[0], s * c[1], s * c[2]}}; }

    friend CoordVectorField operator+(const CoordVectorField& a, const CoordVectorField& b) {
        return {{a.c[0] + b.c[0], a.c[1] + b.c[1], a.c[2] + b.c[2]}};
    }
    friend CoordVectorField operator-(const CoordVectorField& a, const CoordVectorField& b) {
        return {{a.c[0] - b.c[0], a.c[1] - b.c[1], a.c[2] - b.c[2]}};
    }
};

struct Frame {
    CoordVectorField f0, f1, f2;
    const CoordVectorField& operator[](int i) const { return i == 0 ? f0 : i == 1 ? f1 : f2; }
};

template <class T>
Jet<T> apply_field(const VecJet<T>& X, const Jet<T>& u) {
    return X[0] * u.derivative(0) + X[1] * u.derivative(1) + X[2] * u.derivative(2);
}

/// Componentwise X(Y^k) - Y(X^k); the result loses one order.
template <class T>
VecJet<T> bracket(const VecJet<T>& X, const VecJet<T>& Y) {
    VecJet<T> r;
    for (int k = 0; k < 3; ++k) r[k] = apply_field(X, Y[k]) - apply_field(Y, X[k]);
    return r;
}

template <class T>
VecJet<T> lie_bracket(const CoordVectorField& X, const CoordVectorField& Y, const Point<T>& p, int order) {
    if (order + 1 > kMaxJetOrder) throw OrderExhausted("bracket order exceeds the maximal jet order");
    auto r = bracket(X.jets(p, order + 1), Y.jets(p, order + 1));
    for (auto& c : r) c = c.truncated(order);
    return r;
}

/// A frame evaluated to jets at a base point.
template <class T>
struct FrameJets {
    Point<T> base{};
    std::array<VecJet<T>, 3> f;

    int order() const {
        int n = kMaxJetOrder;
        for (const auto& v : f)
            for (const auto& c : v) n = std::min(n, c.order());
        return n;
    }

    Jet<T> apply(int i, const Jet<T>& u) const { return apply_field(f[i], u); }
};

template <class T>
FrameJets<T> evaluate(const Frame& fr, const Point<T>& p, int order) {
    return {p, {fr.f0.jets(p, order), fr.f1.jets(p, order), fr.f2.jets(p, order)}};
}

/// Determinant of the coefficient matrix with columns f0, f1, f2.
template <class T>
Jet<T> frame_determinant(const FrameJets<T>& fj) {
    const auto& a = fj.f;
    // column j holds field j; entry (k, j) = a[j][k]
    return a[0][0] * (a[1][1] * a[2][2] - a[2][1] * a[1][2]) - a[1][0] * (a[0][1] * a[2][2] - a[2][1] * a[0][2]) +
           a[2][0] * (a[0][1] * a[1][2] - a[1][1] * a[0][2]);
}

/// Coordinates (a0, a1, a2) of V in the basis f0, f1, f2, by Cramer's rule.
template <class T>
std::array<Jet<T>, 3> frame_coordinates(const FrameJets<T>& fj, const VecJet<T>& V, const Jet<T>& det) {
    std::array<Jet<T>, 3> out;
    Jet<T> inv = reciprocal(det);
    for (int j = 0; j < 3; ++j) {
        auto cols = fj.f;
        cols[j] = V;
        FrameJets<T> m{fj.base, cols};
        out[j] = frame_determinant(m) * inv;
    }
    return out;
}

/// Structure functions of a jet-evaluated frame; output order is one less than the frame order.
template <class T>
StructureConstants<Jet<T>> structure_functions(const FrameJets<T>& fj,
                                               double tol = scalar_traits<T>::default_tolerance) {
    const int order = fj.order() - 1;
    if (order < 0) throw OrderExhausted("frame jets too short for brackets");
    FrameJets<T> low = fj;
    for (auto& v : low.f)
        for (auto& c : v) c = c.truncated(order);
    Jet<T> det = frame_determinant(low);
    if (is_zero(det.value(), tol)) throw NotAContactFrame("frame is not invertible at the base point");

    auto b21 = frame_coordinates(low, bracket(fj.f[2], fj.f[1]), det);
    auto b10 = frame_coordinates(low, bracket(fj.f[1], fj.f[0]), det);
    auto b20 = frame_coordinates(low, bracket(fj.f[2], fj.f[0]), det);

    double defect = std::max({(b21[0] - T(1)).max_abs(), b10[0].max_abs(), b20[0].max_abs()});
    if (defect > tol)
        throw NotAContactFrame("f0-components of the frame brackets deviate by " + std::to_string(defect));

    StructureConstants<Jet<T>> sf;
    sf.c12_1 = b21[1];
    sf.c12_2 = b21[2];
    sf.c10_1 = b10[1];
    sf.c10_2 = b10[2];
    sf.c20_1 = b20[1];
    sf.c20_2 = b20[2];
    return sf;
}

template <class T>
StructureConstants<Jet<T>> structure_functions(const Frame& fr, const Point<T>& p, int order = kDefaultJetOrder,
                                               double tol = scalar_traits<T>::default_tolerance) {
    if (order + 1 > kMaxJetOrder) throw OrderExhausted("requested structure-function order too high");
    return structure_functions(evaluate(fr, p, order + 1), tol);
}

/// Jacobi relations with derivative terms, evaluated as jets.
template <class T>
std::array<Jet<T>, 2> jacobi_residuals(const StructureConstants<Jet<T>>& c, const FrameJets<T>& fj) {
    auto d = [&](int i, const Jet<T>& u) { return fj.apply(i, u); };
    return {c.c12_2 * c.c10_1 - c.c12_1 * c.c10_2 + d(0, c.c12_2) - d(1, c.c20_2) + d(2, c.c10_2),
            c.c12_2 * c.c20_1 - c.c12_1 * c.c20_2 - d(0, c.c12_1) + d(1, c.c20_1) - d(2, c.c10_1)};
}

enum class ModelKind { heisenberg, unimodular_i, unimodular_ii, unimodular_iii, solv_plus };

/// Coordinate model f0 = dz, f2 = dy, f1 = dx + (c y - d z) dy + y dz, with c12_2 = c and c10_2 = d.
inline Frame solv_plus_frame(const Rational& c, const Rational& d) {
    const Expr x = Expr::x(), y = Expr::y(), z = Expr::z();
    return {{{Expr(0), Expr(0), Expr(1)}},
            {{Expr(1), Expr(c) * y - Expr(d) * z, y}},
            {{Expr(0), Expr(1), Expr(0)}}};
}

/// Orientation mirror of solv_plus_frame(-s, -t): c12_1 = s and c20_1 = t.
inline Frame solv_minus_frame(const Rational& s, const Rational& t) {
    Frame m = solv_plus_frame(-s, -t);
    return {m.f0.scaled(Expr(-1)), m.f2, m.f1};
}

/// Left-invariant real frame on SL(2, R) with c10_2 = c20_1 = 1, in the chart
/// g = [[1 + x, y], [z, (1 + y z) / (1 + x)]].
inline Frame sl2_real_frame() {
    const Expr x = Expr::x(), y = Expr::y(), z = Expr::z();
    const Expr a = Expr(1) + x, d = (Expr(1) + y * z) / a, h = Expr(make_rational(1, 2));
    return {{{h * a, -(h * y), h * z}}, {{-(h * y), h * a, -(h * d)}}, {{-(h * y), -(h * a), -(h * d)}}};
}

/// Lower row (z, (1 + y z) / (1 + x)) of the sl2_real_frame chart.
inline std::array<Expr, 2> sl2_lower_row() {
    const Expr x = Expr::x(), y = Expr::y(), z = Expr::z();
    return {z, (Expr(1) + y * z) / (Expr(1) + x)};
}

inline Frame model_frame(ModelKind kind, const Rational& c = 1) {
    const Expr x = Expr::x(), y = Expr::y(), z = Expr::z(), I = Expr::imaginary_unit();
    const Expr ey = exp(y), cz = cos(z), sz = sin(z);
    const Expr half = Expr(make_rational(1, 2));
    switch (kind) {
        case ModelKind::heisenberg:
            return {{{Expr(0), Expr(0), Expr(1)}}, {{Expr(0), Expr(1), half * x}}, {{Expr(1), Expr(0), -(half * y)}}};
        case ModelKind::unimodular_i:
            return {{{Expr(0), Expr(0), Expr(1)}}, {{ey * cz, -sz, cz}}, {{-(ey * sz), -cz, -sz}}};
        case ModelKind::unimodular_ii:
            return {{{Expr(0), Expr(0), Expr(1)}}, {{I * ey * cz, -(I * sz), I * cz}}, {{I * ey * sz, I * cz, I * sz}}};
        case ModelKind::unimodular_iii:
            return {{{Expr(0), Expr(0), -I}}, {{-(I * ey * sz), -(I * cz), -(I * sz)}}, {{ey * cz, -sz, cz}}};
        case ModelKind::solv_plus:
            return solv_plus_frame(c, make_rational(2, 9) * c * c);
    }
    throw Error("unknown model");
}

inline const char* to_string(ModelKind k) {
    switch (k) {
        case ModelKind::heisenberg: return "heisenberg";
        case ModelKind::unimodular_i: return "unimodular_i";
        case ModelKind::unimodular_ii: return "unimodular_ii";
        case ModelKind::unimodular_iii: return "unimodular_iii";
        case ModelKind::solv_plus: return "solv_plus";
    }
    return "?";
}

// Derivation policies: the curvature pipeline is written once against these.

template <class T>
struct ConstantCalculus {
    using scalar = T;
    using value = T;
    value d(int, const value&) const { return T(0); }
    value zero() const { return T(0); }
};

template <class T>
struct FrameCalculus {
    using scalar = T;
    using value = Jet<T>;
    FrameJets<T> frame;
    value d(int i, const value& u) const {
        if (i == 3) return Jet<T>();
        return frame.apply(i, u);
    }
    value zero() const { return Jet<T>(); }
};

/// kappa including the derivative terms f2(c12_1) - f1(c12_2).
template <class C>
typename C::value kappa_of(const StructureConstants<typename C::value>& c, const C& calc) {
    using T = typename C::scalar;
    return calc.d(2, c.c12_1) - calc.d(1, c.c12_2) - c.c12_1 * c.c12_1 - c.c12_2 * c.c12_2 +
           (c.c10_2 - c.c20_1) / T(2);
}

/// (chi, kappa) of possibly non-constant structure functions.
template <class C>
ContactInvariants<typename C::value> chi_kappa(const StructureConstants<typename C::value>& c, const C& calc,
                                               double tol = scalar_traits<typename C::scalar>::default_tolerance) {
    using T = typename C::scalar;
    using V = typename C::value;
    ContactInvariants<V> out;
    out.kappa = kappa_of(c, calc);
    V r = chi_radicand(c);
    if constexpr (std::is_same_v<V, T>) {
        out.chi = scalar_sqrt(detail::clamp_radicand(r, tol));
    } else {
        T r0 = detail::clamp_radicand(r.value(), tol);
        out.chi = is_zero(r0, 0.0) ? Jet<T>(0) : sqrt(r);
    }
    return out;
}

}  // namespace subriem
