#pragma once

#include <map>
#include <string>

#include "frame.hpp"

namespace subriem {

template <class V>
using Mat4 = std::array<std::array<V, 4>, 4>;
template <class V>
using Tensor3 = std::array<Mat4<V>, 4>;
template <class V>
using Tensor4 = std::array<Tensor3<V>, 4>;

/// Index slots of the two independent Weyl entries, frame order (f0, f1, f2, f_inf).
inline constexpr std::array<int, 4> kAlphaSlot = {0, 1, 0, 1};
inline constexpr std::array<int, 4> kBetaSlot = {0, 1, 0, 2};

template <class V>
struct FeffermanMetric {
    Mat4<V> g, g_inv;
    double inverse_residual = 0;
};

template <class V>
struct Connection {
    Tensor3<V> gamma;    // gamma[k][i][j]: f_k-component of nabla_{f_i} f_j
    Tensor3<V> bracket;  // bracket[k][i][j]: f_k-component of [f_i, f_j]
};

template <class V>
struct CurvatureBundle {
    Tensor3<V> gamma;
    Tensor4<V> riemann;          // R^i_{jkl}
    Tensor4<V> riemann_lowered;  // R_{ijkl}
    Mat4<V> ricci;
    V scalar, kappa, chi_squared;
    Tensor4<V> weyl;
    V alpha, beta;
    V nabla_inf_norm2;  // |nabla_{f_inf} R|^2
    std::map<std::string, double> residuals;
};

namespace detail {

template <class C>
typename C::value constant(const C& calc, const typename C::scalar& v) {
    return calc.zero() + v;
}

template <class V>
double max_abs_all(const Mat4<V>& m) {
    double r = 0;
    for (const auto& row : m)
        for (const auto& v : row) r = std::max(r, max_abs(v));
    return r;
}

template <class V>
V det3(const Mat4<V>& m, int skip_row, int skip_col) {
    int r[3], c[3];
    for (int i = 0, a = 0, b = 0; i < 4; ++i) {
        if (i != skip_row) r[a++] = i;
        if (i != skip_col) c[b++] = i;
    }
    auto e = [&](int i, int j) -> const V& { return m[r[i]][c[j]]; };
    return e(0, 0) * (e(1, 1) * e(2, 2) - e(1, 2) * e(2, 1)) - e(0, 1) * (e(1, 0) * e(2, 2) - e(1, 2) * e(2, 0)) +
           e(0, 2) * (e(1, 0) * e(2, 1) - e(1, 1) * e(2, 0));
}

}  // namespace detail

template <class V>
V determinant(const Mat4<V>& m) {
    V d = m[0][0] * detail::det3(m, 0, 0);
    for (int j = 1; j < 4; ++j) {
        V t = m[0][j] * detail::det3(m, 0, j);
        if (j % 2) d -= t;
        else d += t;
    }
    return d;
}

template <class C>
FeffermanMetric<typename C::value> fefferman_metric(const StructureConstants<typename C::value>& c, const C& calc,
                                                    double tol = scalar_traits<typename C::scalar>::default_tolerance) {
    using T = typename C::scalar;
    using V = typename C::value;
    const V zero = calc.zero();
    const V a2 = c.c12_1 * c.c12_1 + c.c12_2 * c.c12_2;
    const V dterm = calc.d(1, c.c12_2) - calc.d(2, c.c12_1);
    const V half_diff = (c.c10_2 - c.c20_1) / T(2);

    FeffermanMetric<V> m;
    for (auto& row : m.g) row.fill(zero);
    for (auto& row : m.g_inv) row.fill(zero);

    m.g[0][0] = half_diff + (a2 + dterm) / T(3);
    m.g[0][1] = m.g[1][0] = c.c12_1 * (T(-2) / T(3));
    m.g[0][2] = m.g[2][0] = c.c12_2 * (T(-2) / T(3));
    m.g[0][3] = m.g[3][0] = detail::constant(calc, T(2) / T(3));
    m.g[1][1] = m.g[2][2] = detail::constant(calc, T(1));

    m.g_inv[0][3] = m.g_inv[3][0] = detail::constant(calc, T(3) / T(2));
    m.g_inv[1][3] = m.g_inv[3][1] = c.c12_1;
    m.g_inv[2][3] = m.g_inv[3][2] = c.c12_2;
    m.g_inv[1][1] = m.g_inv[2][2] = detail::constant(calc, T(1));
    m.g_inv[3][3] = (a2 * (T(-1) / T(9)) + half_diff + dterm / T(3)) * (T(-9) / T(4));

    if (is_zero(value_at_base(determinant(m.g)), tol)) throw SingularMetric("Fefferman metric is degenerate");

    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            V s = zero;
            for (int k = 0; k < 4; ++k) s += m.g[i][k] * m.g_inv[k][j];
            if (i == j) s -= T(1);
            m.inverse_residual = std::max(m.inverse_residual, max_abs(s));
        }
    if (m.inverse_residual > tol)
        throw IdentityViolation("metric_inverse", m.inverse_residual);
    return m;
}

template <class C>
struct SigmaTrace {
    typename C::value f, trace, residual;
};

/// The function f and Tr(d sigma) of the canonical connection form; residual = trace - kappa/4.
template <class C>
SigmaTrace<C> sigma_trace(const StructureConstants<typename C::value>& c, const C& calc) {
    using T = typename C::scalar;
    using V = typename C::value;
    const V a2 = c.c12_1 * c.c12_1 + c.c12_2 * c.c12_2;
    const V dd = calc.d(2, c.c12_1) - calc.d(1, c.c12_2);
    SigmaTrace<C> out;
    out.f = ((c.c10_2 - c.c20_1) / T(6) - (dd - a2) / T(9)) * (T(3) / T(4));
    out.trace = dd / T(3) - a2 / T(3) + out.f;
    out.residual = out.trace - kappa_of(c, calc) / T(4);
    return out;
}

template <class C>
Tensor3<typename C::value> bracket_coefficients(const StructureConstants<typename C::value>& c, const C& calc) {
    using T = typename C::scalar;
    using V = typename C::value;
    Tensor3<V> b;
    for (auto& m : b)
        for (auto& row : m) row.fill(calc.zero());
    auto set = [&](int i, int j, const std::array<V, 4>& v) {
        for (int k = 0; k < 4; ++k) {
            b[k][i][j] = v[k];
            b[k][j][i] = -v[k];
        }
    };
    const V zero = calc.zero();
    set(2, 1, {detail::constant(calc, T(1)), c.c12_1, c.c12_2, zero});
    set(1, 0, {zero, c.c10_1, c.c10_2, zero});
    set(2, 0, {zero, c.c20_1, c.c20_2, zero});
    return b;
}

/// Levi-Civita connection of the Fefferman metric from the Koszul formula; f_inf commutes with everything.
template <class C>
Connection<typename C::value> levi_civita(const FeffermanMetric<typename C::value>& fm,
                                          const StructureConstants<typename C::value>& c, const C& calc) {
    using T = typename C::scalar;
    using V = typename C::value;
    Connection<V> con;
    con.bracket = bracket_coefficients(c, calc);
    const auto& g = fm.g;
    Tensor3<V> lowered;  // lowered[a][b][k] = g([f_a, f_b], f_k)
    Tensor3<V> koszul;   // koszul[k][a][b] = g(nabla_a f_b, f_k)
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            for (int k = 0; k < 4; ++k) {
                V s = calc.zero();
                for (int d = 0; d < 4; ++d) s += con.bracket[d][a][b] * g[d][k];
                lowered[a][b][k] = s;
            }
    for (int k = 0; k < 4; ++k)
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b)
                koszul[k][a][b] = (calc.d(a, g[b][k]) + calc.d(b, g[a][k]) - calc.d(k, g[a][b]) + lowered[a][b][k] -
                                   lowered[a][k][b] - lowered[b][k][a]) /
                                  T(2);
    for (int d = 0; d < 4; ++d)
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b) {
                V s = calc.zero();
                for (int k = 0; k < 4; ++k) s += fm.g_inv[d][k] * koszul[k][a][b];
                con.gamma[d][a][b] = s;
            }
    return con;
}

/// Largest defects of metric compatibility and torsion-freeness.
template <class C>
std::array<double, 2> connection_residuals(const FeffermanMetric<typename C::value>& fm,
                                           const Connection<typename C::value>& con, const C& calc) {
    using V = typename C::value;
    double metric = 0, torsion = 0;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            for (int c = 0; c < 4; ++c) {
                V s = calc.d(a, fm.g[b][c]);
                for (int d = 0; d < 4; ++d) s -= con.gamma[d][a][b] * fm.g[d][c] + con.gamma[d][a][c] * fm.g[b][d];
                metric = std::max(metric, max_abs(s));
                torsion = std::max(torsion,
                                   max_abs(con.gamma[c][a][b] - con.gamma[c][b][a] - con.bracket[c][a][b]));
            }
    return {metric, torsion};
}

/// The general closed forms of alpha and beta in terms of the structure functions and their frame derivatives.
template <class C>
std::array<typename C::value, 2> alpha_beta_general(const StructureConstants<typename C::value>& c, const C& calc) {
    using T = typename C::scalar;
    using V = typename C::value;
    const V &u1 = c.c12_1, &u2 = c.c12_2, &t1 = c.c10_1, &t2 = c.c10_2, &s1 = c.c20_1, &s2 = c.c20_2;
    const V d0_s2 = calc.d(0, s2);
    const V d0_t1 = calc.d(0, t1);
    const V d1_u1 = calc.d(1, u1);
    const V d1_u2 = calc.d(1, u2);
    const V d1_t2 = calc.d(1, t2);
    const V d2_s1 = calc.d(2, s1);
    const V d2_u1 = calc.d(2, u1);
    const V d2_u2 = calc.d(2, u2);
    const V d1_s1 = calc.d(1, s1);
    const V d2_t2 = calc.d(2, t2);
    const V d1_t1 = calc.d(1, t1);
    const V d2_t1 = calc.d(2, t1);
    const V d2_s2 = calc.d(2, s2);
    const V d0_u1 = calc.d(0, u1);
    const V d0_u2 = calc.d(0, u2);
    const V d1_s2 = calc.d(1, s2);
    const V d0_s1 = calc.d(0, s1);
    const V d0_t2 = calc.d(0, t2);
    const V d0_d1_u1 = calc.d(0, d1_u1);
    const V d1_d1_t2 = calc.d(1, d1_t2);
    const V d2_d2_s1 = calc.d(2, d2_s1);
    const V d1_d1_u2 = calc.d(1, d1_u2);
    const V d2_d2_u1 = calc.d(2, d2_u1);
    const V d0_d2_u2 = calc.d(0, d2_u2);
    const V d1_d1_s1 = calc.d(1, d1_s1);
    const V d2_d2_t2 = calc.d(2, d2_t2);
    const V d1_d2_u1 = calc.d(1, d2_u1);
    const V d2_d1_u2 = calc.d(2, d1_u2);
    const V d1_d1_u1 = calc.d(1, d1_u1);
    const V d2_d2_u2 = calc.d(2, d2_u2);
    const V d0_d1_u2 = calc.d(0, d1_u2);
    const V d0_d2_u1 = calc.d(0, d2_u1);
    const V d1_d2_t2 = calc.d(1, d2_t2);
    const V d2_d1_t2 = calc.d(2, d1_t2);
    const V d1_d2_s1 = calc.d(1, d2_s1);
    const V d2_d1_s1 = calc.d(2, d1_s1);
    const V d1_d2_u2 = calc.d(1, d2_u2);
    const V d2_d1_u1 = calc.d(2, d1_u1);
    const V d1_d1_d1_u2 = calc.d(1, d1_d1_u2);
    const V d2_d2_d2_u1 = calc.d(2, d2_d2_u1);
    const V d1_d1_d2_u1 = calc.d(1, d1_d2_u1);
    const V d2_d2_d1_u2 = calc.d(2, d2_d1_u2);
    const V d1_d2_d1_u2 = calc.d(1, d2_d1_u2);
    const V d2_d1_d1_u2 = calc.d(2, d1_d1_u2);
    const V d1_d2_d2_u1 = calc.d(1, d2_d2_u1);
    const V d2_d1_d2_u1 = calc.d(2, d1_d2_u1);
    V alpha = calc.zero(), beta = calc.zero();
    alpha += d0_s2 * (T(1) / T(2));
    alpha -= t2 * t2 * (T(3) / T(8));
    alpha -= d0_t1 * (T(1) / T(2));
    alpha -= d0_d1_u1 * (T(1) / T(3));
    alpha -= d1_u2 * d1_u2 * (T(1) / T(6));
    alpha -= d1_u1 * d1_u1 * (T(1) / T(6));
    alpha -= d1_d1_t2 * (T(1) / T(8));
    alpha -= d2_d2_s1 * (T(1) / T(8));
    alpha -= d1_d1_d1_u2 * (T(1) / T(12));
    alpha -= d2_d2_d2_u1 * (T(1) / T(12));
    alpha += d0_d2_u2 * (T(1) / T(3));
    alpha += d2_u2 * d2_u2 * (T(1) / T(6));
    alpha += d2_u1 * d2_u1 * (T(1) / T(6));
    alpha += d1_d1_s1 * (T(1) / T(8));
    alpha += d2_d2_t2 * (T(1) / T(8));
    alpha += d1_d1_d2_u1 * (T(1) / T(12));
    alpha += d2_d2_d1_u2 * (T(1) / T(12));
    alpha += s1 * s1 * (T(3) / T(8));
    alpha -= t2 * d1_u2 * (T(7) / T(12));
    alpha -= u2 * d1_t2 * (T(5) / T(24));
    alpha -= t1 * d1_u1 * (T(2) / T(3));
    alpha -= u1 * d1_t1 * (T(1) / T(3));
    alpha -= u2 * d2_t1 * (T(1) / T(6));
    alpha -= u1 * d1_d1_u1 * (T(1) / T(6));
    alpha -= u2 * d1_d1_u2 * (T(1) / T(12));
    alpha -= u2 * d1_d2_u1 * (T(1) / T(12));
    alpha -= s1 * u2 * u2 * (T(1) / T(12));
    alpha -= t2 * u1 * u1 * (T(1) / T(12));
    alpha -= t2 * d2_u1 * (T(1) / T(12));
    alpha -= u1 * d2_t2 * (T(1) / T(24));
    alpha += u2 * d2_s2 * (T(1) / T(3));
    alpha += u2 * d0_u1 * (T(1) / T(6));
    alpha += u2 * d2_d2_u2 * (T(1) / T(6));
    alpha += u1 * d0_u2 * (T(1) / T(6));
    alpha += u1 * d1_s2 * (T(1) / T(6));
    alpha += u2 * u2 * d1_u2 * (T(1) / T(6));
    alpha += u1 * u1 * d2_u1 * (T(1) / T(6));
    alpha += s1 * u1 * u1 * (T(1) / T(12));
    alpha += s1 * d1_u2 * (T(1) / T(12));
    alpha += t2 * u2 * u2 * (T(1) / T(12));
    alpha += u1 * d2_d1_u2 * (T(1) / T(12));
    alpha += u1 * d2_d2_u1 * (T(1) / T(12));
    alpha += u2 * d1_s1 * (T(1) / T(24));
    alpha += s2 * d2_u2 * (T(2) / T(3));
    alpha += u1 * d2_s1 * (T(5) / T(24));
    alpha += s1 * d2_u1 * (T(7) / T(12));
    alpha += u2 * u1 * d1_u1 * (T(1) / T(6));
    alpha += u2 * u1 * d2_u2 * (T(1) / T(6));
    beta -= d0_s1 * (T(1) / T(2));
    beta -= d0_t2 * (T(1) / T(2));
    beta -= d0_d1_u2 * (T(1) / T(3));
    beta -= d0_d2_u1 * (T(1) / T(3));
    beta -= d1_d2_t2 * (T(1) / T(8));
    beta -= d2_d1_t2 * (T(1) / T(8));
    beta -= d1_d2_d1_u2 * (T(1) / T(12));
    beta -= d2_d1_d1_u2 * (T(1) / T(12));
    beta += d1_d2_s1 * (T(1) / T(8));
    beta += d2_d1_s1 * (T(1) / T(8));
    beta += d1_d2_d2_u1 * (T(1) / T(12));
    beta += d2_d1_d2_u1 * (T(1) / T(12));
    beta -= s2 * t2 * (T(7) / T(8));
    beta -= s1 * t1 * (T(7) / T(8));
    beta -= s2 * d1_u2 * (T(7) / T(12));
    beta -= t1 * d2_u1 * (T(7) / T(12));
    beta -= u2 * d2_t2 * (T(3) / T(8));
    beta -= u1 * d1_s1 * (T(3) / T(8));
    beta -= s1 * d1_u1 * (T(2) / T(3));
    beta -= t2 * d2_u2 * (T(2) / T(3));
    beta -= d1_u2 * d2_u2 * (T(1) / T(3));
    beta -= d1_u1 * d2_u1 * (T(1) / T(3));
    beta -= u2 * d1_s2 * (T(1) / T(6));
    beta -= u2 * d1_d2_u2 * (T(1) / T(6));
    beta -= u1 * d0_u1 * (T(1) / T(6));
    beta -= u1 * d2_t1 * (T(1) / T(6));
    beta -= u1 * d2_d1_u1 * (T(1) / T(6));
    beta -= u1 * u1 * d1_u1 * (T(1) / T(6));
    beta -= u2 * d2_s1 * (T(1) / T(8));
    beta -= s2 * s1 * (T(1) / T(8));
    beta -= t2 * t1 * (T(1) / T(8));
    beta -= u1 * d1_t2 * (T(1) / T(8));
    beta -= u2 * d2_d1_u2 * (T(1) / T(12));
    beta -= u2 * d2_d2_u1 * (T(1) / T(12));
    beta -= s2 * d2_u1 * (T(1) / T(12));
    beta -= t1 * d1_u2 * (T(1) / T(12));
    beta -= u1 * d1_d1_u2 * (T(1) / T(12));
    beta -= u1 * d1_d2_u1 * (T(1) / T(12));
    beta += u2 * d0_u2 * (T(1) / T(6));
    beta += u2 * u2 * d2_u2 * (T(1) / T(6));
    beta -= u2 * t2 * u1 * (T(1) / T(6));
    beta -= u2 * u1 * d1_u2 * (T(1) / T(6));
    beta += u2 * s1 * u1 * (T(1) / T(6));
    beta += u2 * u1 * d2_u1 * (T(1) / T(6));
    return {alpha, beta};
}

template <class C>
CurvatureBundle<typename C::value> curvature(const FeffermanMetric<typename C::value>& fm,
                                             const Connection<typename C::value>& con,
                                             const StructureConstants<typename C::value>& c, const C& calc,
                                             double tol = scalar_traits<typename C::scalar>::default_tolerance,
                                             bool enforce = true) {
    using T = typename C::scalar;
    using V = typename C::value;
    const V zero = calc.zero();
    const auto& g = fm.g;
    const auto& gi = fm.g_inv;
    const auto& G = con.gamma;
    const auto& B = con.bracket;

    CurvatureBundle<V> out;
    out.gamma = G;
    auto& R = out.riemann;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            for (int k = 0; k < 4; ++k) {
                R[i][j][k][k] = zero;
                for (int l = k + 1; l < 4; ++l) {
                    V s = calc.d(k, G[i][l][j]) - calc.d(l, G[i][k][j]);
                    for (int m = 0; m < 4; ++m)
                        s += G[m][l][j] * G[i][k][m] - G[m][k][j] * G[i][l][m] - B[m][k][l] * G[i][m][j];
                    R[i][j][k][l] = s;
                    R[i][j][l][k] = -s;
                }
            }
        }

    auto& Rl = out.riemann_lowered;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l) {
                    V s = zero;
                    for (int m = 0; m < 4; ++m) s += g[i][m] * R[m][j][k][l];
                    Rl[i][j][k][l] = s;
                }

    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            V s = zero;
            for (int k = 0; k < 4; ++k) s += R[k][i][k][j];
            out.ricci[i][j] = s;
        }
    out.scalar = zero;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) out.scalar += gi[i][j] * out.ricci[i][j];

    const auto& Ric = out.ricci;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l)
                    out.weyl[i][j][k][l] =
                        Rl[i][j][k][l] -
                        (g[i][k] * Ric[j][l] - g[i][l] * Ric[j][k] - g[j][k] * Ric[i][l] + g[j][l] * Ric[i][k]) / T(2) +
                        out.scalar * (g[i][k] * g[j][l] - g[i][l] * g[j][k]) / T(6);
    const auto& W = out.weyl;
    out.alpha = W[kAlphaSlot[0]][kAlphaSlot[1]][kAlphaSlot[2]][kAlphaSlot[3]];
    out.beta = W[kBetaSlot[0]][kBetaSlot[1]][kBetaSlot[2]][kBetaSlot[3]];

    // nabla_{f_inf} of the lowered Riemann tensor, then its full contraction with itself.
    Tensor4<V> N;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l) {
                    V s = calc.d(3, Rl[i][j][k][l]);
                    for (int m = 0; m < 4; ++m)
                        s -= G[m][3][i] * Rl[m][j][k][l] + G[m][3][j] * Rl[i][m][k][l] + G[m][3][k] * Rl[i][j][m][l] +
                             G[m][3][l] * Rl[i][j][k][m];
                    N[i][j][k][l] = s;
                }
    Tensor4<V> U = N;
    for (int slot = 0; slot < 4; ++slot) {
        Tensor4<V> next;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                for (int k = 0; k < 4; ++k)
                    for (int l = 0; l < 4; ++l) {
                        std::array<int, 4> idx = {i, j, k, l};
                        V s = zero;
                        for (int m = 0; m < 4; ++m) {
                            auto src = idx;
                            src[slot] = m;
                            s += gi[idx[slot]][m] * U[src[0]][src[1]][src[2]][src[3]];
                        }
                        next[i][j][k][l] = s;
                    }
        U = next;
    }
    out.nabla_inf_norm2 = zero;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l) out.nabla_inf_norm2 += U[i][j][k][l] * N[i][j][k][l];

    out.kappa = kappa_of(c, calc);
    out.chi_squared = chi_radicand(c);

    double antisym_ij = 0, antisym_kl = 0, pair = 0, bianchi = 0, weyl_trace = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l) {
                    antisym_ij = std::max(antisym_ij, max_abs(Rl[i][j][k][l] + Rl[j][i][k][l]));
                    antisym_kl = std::max(antisym_kl, max_abs(Rl[i][j][k][l] + Rl[i][j][l][k]));
                    pair = std::max(pair, max_abs(Rl[i][j][k][l] - Rl[k][l][i][j]));
                    bianchi = std::max(bianchi, max_abs(Rl[i][j][k][l] + Rl[i][k][l][j] + Rl[i][l][j][k]));
                }
    // contraction of every index pair (p, q) of the Weyl tensor
    for (int p = 0; p < 4; ++p)
        for (int q = p + 1; q < 4; ++q) {
            int rest[2], n = 0;
            for (int s = 0; s < 4; ++s)
                if (s != p && s != q) rest[n++] = s;
            for (int u = 0; u < 4; ++u)
                for (int v = 0; v < 4; ++v) {
                    V s = zero;
                    for (int a = 0; a < 4; ++a)
                        for (int b = 0; b < 4; ++b) {
                            std::array<int, 4> idx{};
                            idx[p] = a;
                            idx[q] = b;
                            idx[rest[0]] = u;
                            idx[rest[1]] = v;
                            s += gi[a][b] * W[idx[0]][idx[1]][idx[2]][idx[3]];
                        }
                    weyl_trace = std::max(weyl_trace, max_abs(s));
                }
        }
    auto printed = alpha_beta_general(c, calc);
    auto [metric_res, torsion_res] = connection_residuals(fm, con, calc);

    auto& r = out.residuals;
    r["metric_inverse"] = fm.inverse_residual;
    r["metric_compatibility"] = metric_res;
    r["torsion"] = torsion_res;
    r["riemann_antisymmetry_ij"] = antisym_ij;
    r["riemann_antisymmetry_kl"] = antisym_kl;
    r["riemann_pair_symmetry"] = pair;
    r["first_bianchi"] = bianchi;
    r["weyl_trace"] = weyl_trace;
    r["scalar_curvature"] = max_abs(out.scalar - out.kappa * (T(3) / T(2)));
    r["chi_recovery"] = max_abs(out.nabla_inf_norm2 * (T(9) / T(16)) - out.chi_squared);
    r["alpha_closed_form"] = max_abs(printed[0] - out.alpha);
    r["beta_closed_form"] = max_abs(printed[1] - out.beta);

    if (enforce)
        for (const auto& [name, value] : r)
            if (value > tol) throw IdentityViolation(name, value);
    return out;
}

/// Metric, connection and curvature in one call.
template <class C>
CurvatureBundle<typename C::value> fefferman_curvature(const StructureConstants<typename C::value>& c,
                                                       const C& calc,
                                                       double tol = scalar_traits<typename C::scalar>::default_tolerance,
                                                       bool enforce = true) {
    auto fm = fefferman_metric(c, calc, tol);
    auto con = levi_civita(fm, c, calc);
    return curvature(fm, con, c, calc, tol, enforce);
}

template <class T>
CurvatureBundle<T> fefferman_curvature(const StructureConstants<T>& c,
                                       double tol = scalar_traits<T>::default_tolerance, bool enforce = true) {
    return fefferman_curvature(c, ConstantCalculus<T>{}, tol, enforce);
}

}  // namespace subriem
