#pragma once

#include <cmath>
#include <functional>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "flatness.hpp"

namespace subriem {

struct ChainState {
    double h0 = 0, h1 = 0, h2 = 0, hinf = 0;
    std::optional<Point<double>> base;

    double operator[](int i) const { return i == 0 ? h0 : i == 1 ? h1 : i == 2 ? h2 : hinf; }
    double& operator[](int i) { return i == 0 ? h0 : i == 1 ? h1 : i == 2 ? h2 : hinf; }
};

/// Inverse Fefferman metric of a left-invariant structure.
template <class T>
Mat4<T> inverse_metric(const StructureConstants<T>& sc) {
    return fefferman_metric(sc, ConstantCalculus<T>{}).g_inv;
}

/// H = 1/2 sum g^{ij} h_i h_j.
template <class T>
T chain_hamiltonian(const StructureConstants<T>& sc, const std::array<T, 4>& h) {
    const auto gi = inverse_metric(sc);
    T s(0);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) s += gi[i][j] * h[i] * h[j];
    return s / T(2);
}

/// The light-cone polynomial 3 h0 hinf + h1^2 + h2^2 + 2 c12_1 h1 hinf + 2 c12_2 h2 hinf + g^{33} hinf^2 written through
/// the invariants for the unimodular and solv+ families; equals 2H.
template <class T>
std::optional<T> light_cone_polynomial(const StructureConstants<T>& sc, const std::array<T, 4>& h) {
    const auto kind = classify(sc);
    const auto inv = chi_kappa(sc);
    const T &h0 = h[0], &h1 = h[1], &h2 = h[2], &hi = h[3];
    if (kind.unimodular)
        return T(3) * h0 * hi + h1 * h1 + h2 * h2 - T(9) / T(4) * inv.kappa * hi * hi;
    if (kind.kind == AlgebraKind::solv_plus)
        return T(3) * h0 * hi + h1 * h1 + h2 * h2 + T(2) * sc.c12_2 * h2 * hi -
               (inv.kappa + T(8) * inv.chi) / T(4) * hi * hi;
    return std::nullopt;
}

inline double chain_hamiltonian(const StructureConstants<double>& sc, const ChainState& s) {
    return chain_hamiltonian(sc, std::array<double, 4>{s.h0, s.h1, s.h2, s.hinf});
}

/// h0 making the state light-like (H = 0); needs hinf != 0.
inline double light_like_h0(const StructureConstants<double>& sc, double h1, double h2, double hinf) {
    if (hinf == 0) throw DomainViolation("light-like h0 needs a nonzero h_inf");
    const double rest = chain_hamiltonian(sc, std::array<double, 4>{0.0, h1, h2, hinf});
    return -2 * rest / (3 * hinf);
}

/// Hamiltonian flow: dot h_k = sum_i dH/dh_i {h_i, h_k} with {h_i, h_j} = sum_k c^k_ij h_k.
/// With a chart frame attached the base point moves by sum_i dH/dh_i f_i.
inline ChainState chain_rhs(const StructureConstants<double>& sc, const ChainState& s, const Frame* chart = nullptr) {
    const auto gi = inverse_metric(sc);
    const auto B = bracket_coefficients(sc, ConstantCalculus<double>{});
    std::array<double, 4> dH{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) dH[i] += gi[i][j] * s[j];
    ChainState d;
    for (int k = 0; k < 4; ++k) {
        double v = 0;
        for (int i = 0; i < 4; ++i)
            for (int m = 0; m < 4; ++m) v += dH[i] * B[m][i][k] * s[m];
        d[k] = v;
    }
    if (chart && s.base) {
        Point<double> q{};
        for (int i = 0; i < 3; ++i)
            for (int k = 0; k < 3; ++k) q[k] += dH[i] * (*chart)[i].c[k].value<double>(*s.base);
        d.base = q;
    }
    return d;
}

/// h0^2 - (chi - kappa) h1^2 + (chi + kappa) h2^2.
inline double casimir_I(const ChainState& s, double chi, double kappa) {
    return s.h0 * s.h0 - (chi - kappa) * s.h1 * s.h1 + (chi + kappa) * s.h2 * s.h2;
}

enum class SolvCase { delta_zero, delta_pos, delta_neg };

inline const char* to_string(SolvCase c) {
    switch (c) {
        case SolvCase::delta_zero: return "delta_zero";
        case SolvCase::delta_pos: return "delta_pos";
        case SolvCase::delta_neg: return "delta_neg";
    }
    return "?";
}

struct SolvNormalForm {
    double delta = 0;
    SolvCase which = SolvCase::delta_zero;
    std::optional<double> a, b;
    /// Row i holds the new basis vector i in terms of (f0, f1, f2).
    std::array<std::array<double, 3>, 3> basis_change{};
    /// Largest deviation of the transformed brackets from the normal form.
    double residual = 0;
};

namespace detail {

using Mat3 = std::array<std::array<double, 3>, 3>;

inline std::array<double, 3> solve3(const Mat3& rows, const std::array<double, 3>& v) {
    // rows[i] are basis vectors; solve sum_i x_i rows[i] = v
    auto det = [](const Mat3& m) {
        return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
               m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    };
    Mat3 cols{};
    for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 3; ++k) cols[k][i] = rows[i][k];
    const double d = det(cols);
    std::array<double, 3> x{};
    for (int i = 0; i < 3; ++i) {
        Mat3 m = cols;
        for (int k = 0; k < 3; ++k) m[k][i] = v[k];
        x[i] = det(m) / d;
    }
    return x;
}

}  // namespace detail

/// Normal form of a solv+ algebra under a change of basis.
template <class T>
SolvNormalForm solv_normal_form(const StructureConstants<T>& sc) {
    const auto kind = classify(sc);
    if (kind.kind != AlgebraKind::solv_plus) throw NotSolvPlus("normal form needs a solv+ structure");
    const auto d = convert_constants<double>(sc);
    const double c = d.c12_2, p = d.c10_2;
    SolvNormalForm nf;
    nf.delta = c * c - 4 * p;
    std::array<std::array<double, 3>, 3> target[3];  // target[i][j]: coordinates of [new_i, new_j]
    for (auto& t : target)
        for (auto& row : t) row.fill(0);
    auto set = [&](int i, int j, std::array<double, 3> v) {
        target[i][j] = v;
        for (auto& x : v) x = -x;
        target[j][i] = v;
    };
    const double scale = std::max({1.0, std::abs(c), std::abs(p)});
    if (std::abs(nf.delta) <= 1e-12 * scale * scale) {
        nf.delta = 0;
        nf.which = SolvCase::delta_zero;
        nf.basis_change = {{{1, 0, c / 2}, {0, 2 / c, 0}, {-1, 0, 0}}};
        set(2, 1, {1, 0, 1});
        set(0, 1, {1, 0, 0});
    } else if (nf.delta > 0) {
        const double r = std::sqrt(nf.delta);
        nf.which = SolvCase::delta_pos;
        nf.a = (c - r) / (c + r);
        nf.basis_change = {{{1, 0, (c - r) / 2}, {0, 2 / (c + r), 0}, {1, 0, (c + r) / 2}}};
        set(2, 1, {0, 0, 1});
        set(0, 1, {*nf.a, 0, 0});
    } else {
        const double r = std::sqrt(-nf.delta);
        nf.which = SolvCase::delta_neg;
        nf.b = c / r;
        nf.basis_change = {{{2, 0, c}, {0, 2 / r, 0}, {0, 0, r}}};
        set(2, 1, {1, 0, *nf.b});
        set(0, 1, {*nf.b, 0, -1});
    }
    const auto B = bracket_coefficients(d, ConstantCalculus<double>{});
    const auto& A = nf.basis_change;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            std::array<double, 3> v{};
            for (int a = 0; a < 3; ++a)
                for (int b = 0; b < 3; ++b)
                    for (int k = 0; k < 3; ++k) v[k] += A[i][a] * A[j][b] * B[k][a][b];
            const auto x = detail::solve3(A, v);
            for (int k = 0; k < 3; ++k) nf.residual = std::max(nf.residual, std::abs(x[k] - target[i][j][k]));
        }
    return nf;
}

/// Parameters of the solv+ invariants: s = sqrt(chi - kappa) and the radical of +-delta.
struct SolvInvariantData {
    SolvCase which = SolvCase::delta_zero;
    double s = 0, r = 0;
};

inline SolvInvariantData solv_invariant_data(double chi, double kappa) {
    const double delta = -kappa - 7 * chi;
    const double s = std::sqrt(chi - kappa);
    const double scale = std::max({1.0, std::abs(chi), std::abs(kappa)});
    if (std::abs(delta) <= 1e-12 * scale) return {SolvCase::delta_zero, s, 0.0};
    if (delta > 0) return {SolvCase::delta_pos, s, std::sqrt(delta)};
    return {SolvCase::delta_neg, s, std::sqrt(-delta)};
}

/// The invariant of the solv+ fibre algebra matching the sign of delta. Jet and scalar arguments are both accepted;
/// for the delta < 0 case the phase is returned through theta when requested.
template <class V>
V invariant_JKL(const V& h0, const V& h2, const SolvInvariantData& d) {
    using std::exp;
    using std::log;
    switch (d.which) {
        case SolvCase::delta_zero: {
            const V den = h0 * 2.0 + h2 * d.s;
            if (std::abs(value_at_base(den)) <= 1e-14) throw DomainViolation("J: vanishing exponent denominator");
            return (h0 + h2 * (d.s / 2)) * exp(h0 * 2.0 / den);
        }
        case SolvCase::delta_pos: {
            const V base = h0 + h2 * ((d.s + d.r) / 2);
            if (value_at_base(base) <= 0) throw DomainViolation("K: non-positive base of a real power");
            const double e = -(d.s - d.r) / (d.s + d.r);
            return (h0 + h2 * ((d.s - d.r) / 2)) * exp(log(base) * e);
        }
        case SolvCase::delta_neg: {
            const V w = h0 * 2.0 + h2 * d.s;
            const V v = h2 * d.r;
            const double c = d.s / d.r;
            if constexpr (std::is_same_v<V, double>) {
                return (w * w + v * v) * std::exp(-2 * c * std::atan2(v, w));
            } else {
                // principal argument of w + i v, as a jet
                using C = Jet<Complex>;
                auto lift = [](const V& u) {
                    C out(u.order());
                    for (int k = 0; k < u.size(); ++k) out[k] = Complex(u[k], 0);
                    return out;
                };
                if (value_at_base(w) <= 0 && std::abs(value_at_base(v)) <= 1e-14)
                    throw DomainViolation("L: state on the branch cut of the argument");
                const C logz = log(lift(w) + lift(v) * Complex(0, 1));
                V th(w.order());
                for (int k = 0; k < th.size(); ++k) th[k] = logz[k].imag();
                return (w * w + v * v) * exp(th * (-2 * c));
            }
        }
    }
    throw Error("unreachable");
}

inline double invariant_JKL(const ChainState& s, double chi, double kappa) {
    return invariant_JKL(s.h0, s.h2, solv_invariant_data(chi, kappa));
}

enum class ChainFamily { heisenberg, unimodular, solv_plus, other };

struct ChainSample {
    double t;
    ChainState state;
    double H;
    std::optional<double> invariant;
};

struct DriftReport {
    double H = 0, hinf = 0;
    std::optional<double> invariant;
    std::string invariant_name = "none";
};

struct ChainTrajectory {
    std::vector<ChainSample> samples;
    DriftReport drift;
};

/// Conserved quantity attached to a structure, with its name.
struct ChainInvariant {
    std::string name = "none";
    std::function<double(const ChainState&)> eval;
};

inline ChainInvariant chain_invariant(const StructureConstants<double>& sc) {
    const auto kind = classify(sc);
    const auto inv = chi_kappa(sc);
    if (kind.kind == AlgebraKind::h3) return {"h0", [](const ChainState& s) { return s.h0; }};
    if (kind.unimodular)
        return {"I", [chi = inv.chi, kappa = inv.kappa](const ChainState& s) { return casimir_I(s, chi, kappa); }};
    if (kind.kind == AlgebraKind::solv_plus) {
        const auto d = solv_invariant_data(inv.chi, inv.kappa);
        const char* name = d.which == SolvCase::delta_zero ? "J" : d.which == SolvCase::delta_pos ? "K" : "L";
        return {name, [d](const ChainState& s) { return invariant_JKL(s.h0, s.h2, d); }};
    }
    return {};
}

/// How the argument inside L is followed along a trajectory: continued through the negative axis, or rejected there.
enum class BranchPolicy { unwrap, reject };

/// Classical fourth-order Runge-Kutta at a fixed step.
inline ChainTrajectory integrate_chain(const StructureConstants<double>& sc, const ChainState& s0, double T, double dt,
                                       const Frame* chart = nullptr, BranchPolicy branch = BranchPolicy::unwrap) {
    if (!(dt > 0) || !(T > 0)) throw StepRejected("duration and step must be positive");
    const auto invariant = chain_invariant(sc);
    const long steps = std::lround(T / dt);
    auto add = [](const ChainState& a, const ChainState& b, double h) {
        ChainState r = a;
        for (int k = 0; k < 4; ++k) r[k] += h * b[k];
        if (a.base && b.base)
            for (int k = 0; k < 3; ++k) (*r.base)[k] += h * (*b.base)[k];
        return r;
    };

    ChainTrajectory tr;
    tr.samples.reserve(steps + 1);
    const auto inv = chi_kappa(sc);
    const bool track_phase = invariant.name == "L";
    const auto data = track_phase ? solv_invariant_data(inv.chi, inv.kappa) : SolvInvariantData{};
    auto phase = [&](const ChainState& s) { return std::atan2(s.h2 * data.r, 2 * s.h0 + data.s * s.h2); };
    double last_phase = track_phase ? phase(s0) : 0;
    int winding = 0;
    auto sample = [&](double t, const ChainState& s) {
        ChainSample out{t, s, chain_hamiltonian(sc, s), std::nullopt};
        if (invariant.eval) out.invariant = invariant.eval(s);
        if (track_phase && winding != 0)
            *out.invariant *= std::exp(-2 * (data.s / data.r) * 2 * std::numbers::pi * winding);
        tr.samples.push_back(out);
    };

    ChainState s = s0;
    sample(0, s);
    for (long n = 1; n <= steps; ++n) {
        const ChainState k1 = chain_rhs(sc, s, chart);
        const ChainState k2 = chain_rhs(sc, add(s, k1, dt / 2), chart);
        const ChainState k3 = chain_rhs(sc, add(s, k2, dt / 2), chart);
        const ChainState k4 = chain_rhs(sc, add(s, k3, dt), chart);
        ChainState next = s;
        for (int k = 0; k < 4; ++k) next[k] += dt / 6 * (k1[k] + 2 * k2[k] + 2 * k3[k] + k4[k]);
        if (s.base)
            for (int k = 0; k < 3; ++k)
                (*next.base)[k] += dt / 6 * ((*k1.base)[k] + 2 * (*k2.base)[k] + 2 * (*k3.base)[k] + (*k4.base)[k]);
        s = next;
        if (track_phase) {
            const double ph = phase(s);
            if (std::abs(ph - last_phase) > std::numbers::pi) {
                if (branch == BranchPolicy::reject) throw DomainViolation("trajectory crosses the branch cut of L");
                winding += ph < last_phase ? 1 : -1;
            }
            last_phase = ph;
        }
        sample(n * dt, s);
    }

    const auto& first = tr.samples.front();
    tr.drift.invariant_name = invariant.name;
    for (const auto& smp : tr.samples) {
        tr.drift.H = std::max(tr.drift.H, std::abs(smp.H - first.H));
        tr.drift.hinf = std::max(tr.drift.hinf, std::abs(smp.state.hinf - first.state.hinf));
        if (smp.invariant)
            tr.drift.invariant = std::max(tr.drift.invariant.value_or(0.0), std::abs(*smp.invariant - *first.invariant));
    }
    return tr;
}

enum class GradientFamily { unimodular, solv_plus };

/// Closed-form gradient at (h1, h2) = (1, 1) for unimodular structures.
inline std::array<double, 2> unimodular_gradient_closed_form(double chi, double kappa) {
    return {8.0 / 9 - 2 * (chi - kappa / 2), 8.0 / 9 + 2 * (chi + kappa / 2)};
}

/// Gradient at (1, 1) of the conserved quantity restricted to H = 0, hinf = 1, by jet differentiation.
inline std::array<double, 2> restricted_gradient(double chi, double kappa, GradientFamily family) {
    using J = Jet<double>;
    const J h1 = J::variable(0, 1.0, 1), h2 = J::variable(1, 1.0, 1);
    J value;
    if (family == GradientFamily::unimodular) {
        const J h0 = (h1 * h1 + h2 * h2) * (-1.0 / 3) + 0.75 * kappa;
        value = h0 * h0 - (chi - kappa) * h1 * h1 + (chi + kappa) * h2 * h2;
    } else {
        const auto d = solv_invariant_data(chi, kappa);
        const J h0 = (h1 * h1 + h2 * h2 + 2 * d.s * h2) * (-1.0 / 3) + (kappa + 8 * chi) / 12;
        value = invariant_JKL(h0, h2, d);
    }
    return {value.coeff(1, 0, 0), value.coeff(0, 1, 0)};
}

/// Gradient of the foliation at (1, 1): closed form for unimodular structures, exact differentiation for solv+.
inline std::array<double, 2> foliation_gradient(double chi, double kappa, GradientFamily family) {
    if (family == GradientFamily::unimodular) return unimodular_gradient_closed_form(chi, kappa);
    return restricted_gradient(chi, kappa, family);
}

template <class T>
struct ConformalClass {
    bool conformally_flat = false;
    T chi{}, kappa{};
    T alpha{};
    std::string algebra;
};

template <class T>
ConformalClass<T> conformal_class_decision(const StructureConstants<T>& sc) {
    const auto inv = chi_kappa(sc);
    ConformalClass<T> out;
    out.chi = inv.chi;
    out.kappa = inv.kappa;
    out.alpha = alpha_beta_left_invariant(sc)[0];
    out.conformally_flat = alpha_vanishes(out.alpha, inv);
    if (out.conformally_flat) out.algebra = "su(2,1)";
    return out;
}

}  // namespace subriem
