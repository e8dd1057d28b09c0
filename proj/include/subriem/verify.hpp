#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "chains.hpp"
#include "flatness.hpp"
#include "heisenberg.hpp"

namespace subriem::verify {

struct SuiteResult {
    std::string name;
    int cases = 0;
    double worst = 0;
    std::vector<std::string> failures;

    bool passed() const { return failures.empty(); }

    void check(bool ok, const std::string& what) {
        ++cases;
        if (!ok) failures.push_back(what);
    }

    void residual(double r, double tol, const std::string& what) {
        worst = std::max(worst, r);
        check(r <= tol, what + " residual " + std::to_string(r));
    }
};

struct Fixture {
    std::string label;
    StructureConstants<Rational> constants;
};

enum class Family { unimodular, solv_plus, solv_minus };

namespace detail {

inline Rational quarter_step(std::mt19937_64& rng, int lo, int hi) {
    std::uniform_int_distribution<int> d(lo, hi);
    return make_rational(d(rng), 4);
}

}  // namespace detail

/// Random canonical constants with chi in [0, chi_max] and quarter-integer entries.
inline StructureConstants<Rational> random_canonical(std::mt19937_64& rng, Family family, int chi_max = 3) {
    StructureConstants<Rational> sc;
    switch (family) {
        case Family::unimodular: {
            const Rational chi = detail::quarter_step(rng, 0, 4 * chi_max);
            const Rational kappa = detail::quarter_step(rng, -4 * chi_max, 4 * chi_max);
            sc.c10_2 = chi + kappa;
            sc.c20_1 = chi - kappa;
            break;
        }
        case Family::solv_plus:
            sc.c12_2 = detail::quarter_step(rng, 1, 12);
            sc.c10_2 = 2 * detail::quarter_step(rng, 1, 4 * chi_max);
            break;
        case Family::solv_minus:
            sc.c12_1 = detail::quarter_step(rng, 1, 12);
            sc.c20_1 = 2 * detail::quarter_step(rng, 1, 4 * chi_max);
            break;
    }
    return sc;
}

inline std::vector<Fixture> random_fixtures(std::uint64_t seed, int count, int chi_max = 3) {
    std::mt19937_64 rng(seed);
    std::vector<Fixture> out;
    for (int n = 0; n < count; ++n) {
        const auto family = static_cast<Family>(n % 3);
        out.push_back({"random_" + std::to_string(n), random_canonical(rng, family, chi_max)});
    }
    return out;
}

/// Heisenberg, the three unimodular flat shapes and both flat solvable shapes.
inline std::vector<Fixture> fixed_fixtures() {
    auto make = [](Rational a, Rational b, Rational p, Rational q) {
        StructureConstants<Rational> sc;
        sc.c12_1 = a;
        sc.c12_2 = b;
        sc.c10_2 = p;
        sc.c20_1 = q;
        return sc;
    };
    return {
        {"heisenberg", make(0, 0, 0, 0)},
        {"kappa_minus_one", make(0, 0, -1, 1)},
        {"kappa_one", make(0, 0, 1, -1)},
        {"chi_one", make(0, 0, 1, 1)},
        {"solv_plus_flat", make(0, 3, 2, 0)},
        {"solv_minus_flat", make(3, 0, 0, -2)},
    };
}

/// The evaluation points used for coordinate models.
inline std::vector<Point<double>> sample_points(std::uint64_t seed, int count, double radius = 0.5) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-radius, radius);
    std::vector<Point<double>> out;
    for (int n = 0; n < count; ++n) out.push_back({u(rng), u(rng), u(rng)});
    return out;
}

/// Closed-form alpha for canonical constants by algebra type; nullopt for a structure outside the three shapes.
template <class T>
std::optional<T> alpha_by_invariants(const StructureConstants<T>& sc, const ContactInvariants<T>& inv,
                                     double tol = scalar_traits<T>::default_tolerance) {
    auto zero = [&](const T& v) { return is_zero(v, tol); };
    const T &chi = inv.chi, &kappa = inv.kappa;
    if (zero(sc.c12_1) && zero(sc.c12_2)) return -T(3) / T(2) * kappa * chi;
    // solv+ with c10_2 < 0 and solv- with c20_1 < 0 take each other's closed form with opposite sign
    if (zero(sc.c12_1) && zero(sc.c20_1))
        return real_value(sc.c10_2) > 0 ? -chi * (kappa + T(8) * chi) / T(6) : chi * (kappa - T(8) * chi) / T(6);
    if (zero(sc.c12_2) && zero(sc.c10_2))
        return real_value(sc.c20_1) > 0 ? -chi * (kappa - T(8) * chi) / T(6) : chi * (kappa + T(8) * chi) / T(6);
    return std::nullopt;
}

/// Weyl entries divided by alpha; all entries vanish when alpha does.
template <class T>
std::optional<Tensor4<T>> weyl_ratios(const CurvatureBundle<T>& cb, double tol) {
    if (is_zero(cb.alpha, tol)) return std::nullopt;
    Tensor4<T> r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l) r[i][j][k][l] = cb.weyl[i][j][k][l] / cb.alpha;
    return r;
}

/// (f1, f2) -> (-f1, -f2): c12 changes sign, the rest is fixed.
template <class T>
StructureConstants<T> flip_horizontal(const StructureConstants<T>& sc) {
    auto r = sc;
    r.c12_1 = -sc.c12_1;
    r.c12_2 = -sc.c12_2;
    return r;
}

/// (f0, f1, f2) -> (-f0, f2, f1).
template <class T>
StructureConstants<T> swap_orientation(const StructureConstants<T>& sc) {
    StructureConstants<T> r;
    r.c12_1 = -sc.c12_2;
    r.c12_2 = -sc.c12_1;
    r.c10_1 = -sc.c20_2;
    r.c10_2 = -sc.c20_1;
    r.c20_1 = -sc.c10_2;
    r.c20_2 = -sc.c10_1;
    return r;
}

template <class T>
StructureConstants<T> as_backend(const StructureConstants<Rational>& sc) {
    return convert_constants<T>(sc);
}

/// Contact relation, Jacobi, canonical shape, alpha closed forms and frame-change invariance.
template <class T>
SuiteResult structure_suite(const std::vector<Fixture>& fx, double tol) {
    SuiteResult s{"structure"};
    for (const auto& f : fx) {
        const auto sc = as_backend<T>(f.constants);
        const auto rep = validate_canonical(sc, tol);
        s.check(rep.canonical, f.label + ": canonical (" +
                                   (rep.violations.empty() ? std::string() : rep.violations.front()) + ")");
        if (!rep.canonical) continue;
        const auto inv = chi_kappa(sc, tol);
        const auto alpha = alpha_beta_left_invariant(sc);
        if (auto expected = alpha_by_invariants(sc, inv, tol))
            s.residual(magnitude(alpha[0] - *expected), tol, f.label + ": alpha closed form");
        else
            s.check(false, f.label + ": no closed form applies");
        s.residual(magnitude(alpha[1]), tol, f.label + ": beta vanishes");

        const auto flipped = chi_kappa(flip_horizontal(sc), tol);
        s.residual(std::max(magnitude(flipped.chi - inv.chi), magnitude(flipped.kappa - inv.kappa)), tol,
                   f.label + ": horizontal sign flip");
        const auto swapped = chi_kappa(swap_orientation(sc), tol);
        s.residual(std::max(magnitude(swapped.chi - inv.chi), magnitude(swapped.kappa - inv.kappa)), tol,
                   f.label + ": orientation swap");
        try {
            classify(sc, tol);
            s.check(true, "");
        } catch (const Error& e) {
            s.check(false, f.label + ": " + e.what());
        }
    }
    return s;
}

/// Bracket Jacobi on polynomial fields, model Jacobi relations and model invariants.
inline SuiteResult jet_suite(std::uint64_t seed, double tol = 1e-10) {
    SuiteResult s{"jet_calculus"};
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> coef(-3, 3);
    const Expr x = Expr::x(), y = Expr::y(), z = Expr::z();
    const Expr mon[] = {Expr(1), x, y, z, x * y, y * z, x * z, x * x};
    auto field = [&] {
        CoordVectorField V;
        for (auto& c : V.c) {
            c = Expr(0);
            for (const auto& m : mon) c = c + Expr(coef(rng)) * m;
        }
        return V;
    };
    const auto pts = sample_points(seed, 3);
    for (int trial = 0; trial < 3; ++trial) {
        const auto X = field(), Y = field(), Z = field();
        for (const auto& p : pts) {
            const auto a = X.jets(p, 5), b = Y.jets(p, 5), c = Z.jets(p, 5);
            const auto u = bracket(bracket(a, b), c), v = bracket(bracket(b, c), a), w = bracket(bracket(c, a), b);
            double r = 0;
            for (int k = 0; k < 3; ++k) r = std::max(r, (u[k] + v[k] + w[k]).max_abs());
            s.residual(r, tol, "bracket Jacobi on polynomial fields");
        }
    }

    const ModelKind models[] = {ModelKind::heisenberg, ModelKind::unimodular_i, ModelKind::unimodular_ii,
                                ModelKind::unimodular_iii, ModelKind::solv_plus};
    const std::array<double, 2> expected[] = {{0, 0}, {0, -1}, {0, 1}, {1, 0}};
    for (const auto kind : models) {
        const auto fr = model_frame(kind);
        for (const auto& p : pts) {
            const Point<Complex> q{p[0], p[1], p[2]};
            auto fj = evaluate(fr, q, 5);
            const auto sf = structure_functions(fj);
            const auto jac = jacobi_residuals(sf, fj);
            s.residual(std::max(jac[0].max_abs(), jac[1].max_abs()), tol,
                       std::string(to_string(kind)) + ": Jacobi relations as jets");
            const int idx = static_cast<int>(kind);
            if (idx < 4) {
                FrameCalculus<Complex> calc{fj};
                const auto inv = chi_kappa(sf, calc);
                s.residual(std::max(std::abs(inv.chi.value() - expected[idx][0]),
                                    std::abs(inv.kappa.value() - expected[idx][1])),
                           tol, std::string(to_string(kind)) + ": (chi, kappa)");
            }
        }
    }
    return s;
}

/// Curvature identities on constants and on the coordinate models.
template <class T>
SuiteResult curvature_suite(const std::vector<Fixture>& fx, std::uint64_t seed, double tol) {
    SuiteResult s{"curvature"};
    std::optional<Tensor4<T>> reference;
    for (const auto& f : fx) {
        const auto sc = as_backend<T>(f.constants);
        try {
            const auto cb = fefferman_curvature(sc, tol, false);
            for (const auto& [name, value] : cb.residuals) s.residual(value, tol, f.label + ": " + name);
            const auto st = sigma_trace(sc, ConstantCalculus<T>{});
            s.residual(magnitude(st.residual), tol, f.label + ": sigma trace");
            const auto closed = alpha_beta_left_invariant(sc);
            s.residual(std::max(magnitude(cb.alpha - closed[0]), magnitude(cb.beta - closed[1])), tol,
                       f.label + ": alpha and beta against the left-invariant reduction");
            if (auto ratios = weyl_ratios(cb, tol)) {
                if (!reference) {
                    reference = ratios;
                } else {
                    double r = 0;
                    for (int i = 0; i < 4; ++i)
                        for (int j = 0; j < 4; ++j)
                            for (int k = 0; k < 4; ++k)
                                for (int l = 0; l < 4; ++l)
                                    r = std::max(r, magnitude((*ratios)[i][j][k][l] - (*reference)[i][j][k][l]));
                    s.residual(r, tol, f.label + ": Weyl entries as fixed multiples of alpha");
                }
            } else {
                double r = 0;
                for (const auto& a : cb.weyl)
                    for (const auto& b : a)
                        for (const auto& c : b)
                            for (const auto& v : c) r = std::max(r, magnitude(v));
                s.residual(r, tol, f.label + ": Weyl vanishes with alpha");
            }
        } catch (const Error& e) {
            s.check(false, f.label + ": " + e.what());
        }
    }

    const ModelKind models[] = {ModelKind::unimodular_i, ModelKind::unimodular_ii, ModelKind::unimodular_iii,
                                ModelKind::solv_plus};
    for (const auto kind : models) {
        for (const auto& p : sample_points(seed, 3)) {
            const Point<Complex> q{p[0], p[1], p[2]};
            auto fj = evaluate(model_frame(kind), q, 4);
            FrameCalculus<Complex> calc{fj};
            try {
                const auto cb = fefferman_curvature(structure_functions(fj), calc, 1e-9, false);
                for (const auto& [name, value] : cb.residuals)
                    s.residual(value, 1e-9, std::string(to_string(kind)) + ": " + name);
            } catch (const Error& e) {
                s.check(false, std::string(to_string(kind)) + ": " + e.what());
            }
        }
    }
    return s;
}

/// A cubic polynomial with small random rational coefficients.
inline Expr random_cubic(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> coef(-2, 2);
    const Expr x = Expr::x(), y = Expr::y(), z = Expr::z();
    const Expr terms[] = {x, y, z, x * x, x * y, y * z, z * z, x * x * y, y * y * z, x * y * z, z * z * z};
    Expr phi(0);
    for (const auto& t : terms) phi = phi + Expr(make_rational(coef(rng), 10)) * t;
    return phi;
}

/// Rescaling cross-check, alpha/beta covariance and the composition law on the solv+ model.
inline SuiteResult rescaling_suite(std::uint64_t seed, double tol = 1e-8) {
    SuiteResult s{"rescaling"};
    std::mt19937_64 rng(seed);
    const Frame fr = model_frame(ModelKind::solv_plus);
    const auto pts = sample_points(seed + 1, 3, 0.3);
    for (int trial = 0; trial < 2; ++trial) {
        const Expr phi = random_cubic(rng), psi = random_cubic(rng);
        for (const auto& p : pts) {
            s.residual(rescaling_cross_check(fr, phi, p, 4), 1e-10, "frame rescale against constant rescale");
            try {
                const auto r = verify_alpha_beta_scaling(fr, phi, p, tol, 4);
                s.residual(std::max(r[0], r[1]), tol, "alpha and beta covariance");
            } catch (const ScalingViolation& e) {
                s.check(false, e.what());
            }
            const auto twice = structure_functions(rescale_frame(rescale_frame(fr, phi), psi), p, 3);
            const auto once = structure_functions(rescale_frame(fr, phi + psi), p, 3);
            double r = 0;
            for (int k = 0; k < 6; ++k) r = std::max(r, (twice[k] - once[k]).max_abs());
            s.residual(r, 1e-9, "composition of rescalings");

            const auto orig = evaluate(fr, p, 1), resc = evaluate(rescale_frame(fr, phi), p, 1);
            const double factor = std::exp(-4 * phi.value<double>(p));
            s.residual(std::abs(frame_determinant(resc).value() - factor * frame_determinant(orig).value()), 1e-12,
                       "frame volume scaling");
        }
    }
    return s;
}

/// Flatness verdicts on constants and the flattening of every flat family at chart points.
template <class T>
SuiteResult flatness_suite(const std::vector<Fixture>& fx, std::uint64_t seed, double tol, int points = 10) {
    SuiteResult s{"flatness"};
    const auto pts = sample_points(seed + 2, points, 0.4);
    for (const auto& f : fx) {
        const auto sc = as_backend<T>(f.constants);
        try {
            const auto v = flatness_verdict(sc, tol);
            const bool alpha_zero = is_zero(alpha_beta_left_invariant(sc)[0], tol);
            s.check(v.fefferman_flat == alpha_zero, f.label + ": verdict agrees with alpha");
            if (!v.fefferman_flat) continue;
            for (const auto& p : pts) {
                const Point<Complex> q{p[0], p[1], p[2]};
                const auto ri = rescaled_invariants(*v.chart, *v.phi, q, 3);
                s.residual(std::max(magnitude(ri.invariants.chi.value()), magnitude(ri.invariants.kappa.value())),
                           1e-8, f.label + " (" + to_string(v.family) + "): flattened invariants");
            }
        } catch (const Error& e) {
            s.check(false, f.label + ": " + e.what());
        }
    }
    return s;
}

/// Energy, h_inf and Casimir conservation; exact Casimir brackets; the light-cone polynomial.
inline SuiteResult chains_suite(const std::vector<Fixture>& fx, std::uint64_t seed) {
    SuiteResult s{"chains"};
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> coef(-6, 6);
    for (const auto& f : fx) {
        const auto& sc = f.constants;
        const auto kind = classify(sc);
        const auto inv = chi_kappa(sc);
        if (kind.unimodular) {
            // {I, h_k} = 2 sum_{j,m} Q_jj c^m_jk h_j h_m vanishes iff the symmetrized coefficients do
            const auto B = bracket_coefficients(sc, ConstantCalculus<Rational>{});
            const std::array<Rational, 4> Q = {1, -(inv.chi - inv.kappa), inv.chi + inv.kappa, 0};
            bool ok = true;
            for (int k = 0; k < 4; ++k)
                for (int j = 0; j < 4; ++j)
                    for (int m = 0; m < 4; ++m) ok = ok && Q[j] * B[m][j][k] + Q[m] * B[j][m][k] == 0;
            s.check(ok, f.label + ": Casimir commutes with every coordinate");
        }
        for (int trial = 0; trial < 3; ++trial) {
            std::array<Rational, 4> h;
            for (auto& v : h) v = make_rational(coef(rng), 3);
            if (auto lc = light_cone_polynomial(sc, h))
                s.check(2 * chain_hamiltonian(sc, h) == *lc, f.label + ": light-cone polynomial equals 2H");
        }
    }

    struct Case {
        std::string label;
        StructureConstants<double> sc;
        double invariant_tol;
    };
    StructureConstants<double> uni{}, solv{};
    uni.c10_2 = 1;
    uni.c20_1 = 1;
    solv.c12_2 = 1;
    solv.c10_2 = 1;
    for (const auto& c : {Case{"unimodular", uni, 1e-7}, Case{"solv_plus", solv, 1e-6}}) {
        const double h1 = 2, h2 = 1, hinf = 2;
        const ChainState start{light_like_h0(c.sc, h1, h2, hinf), h1, h2, hinf};
        const auto a = integrate_chain(c.sc, start, 10, 1e-3);
        const auto b = integrate_chain(c.sc, start, 10, 5e-4);
        s.residual(a.drift.H, 1e-8, c.label + ": energy drift");
        s.check(a.drift.hinf == 0, c.label + ": h_inf constant");
        s.residual(a.drift.invariant.value_or(1), c.invariant_tol, c.label + ": " + a.drift.invariant_name + " drift");
        s.check(b.drift.H * 8 <= a.drift.H,
                c.label + ": halving the step improves energy drift eightfold");
    }
    return s;
}

inline SuiteResult heisenberg_suite() {
    SuiteResult s{"heisenberg"};
    const auto cert = heisenberg::verify();
    s.check(cert.generators_conformal, "generators satisfy the conformal system");
    s.check(cert.eta_types, "generator eta types");
    s.check(cert.dimension == 8 && cert.table_match, "bracket table matches the graded algebra");
    s.check(cert.orientation == 1, "correspondence is a homomorphism");
    s.check(cert.grading, "generator weights");
    s.check(cert.tanaka_jacobi, "graded table Jacobi");
    s.check(cert.su21_commutators && cert.su21_traceless, "matrix realization");
    s.check(cert.su21_signature, "invariant Hermitian form of signature (2,1)");
    s.check(cert.oracle_dimension == 8 && cert.oracle_span, "brute-force solution space");
    s.check(cert.isometry_kernel, "isometries are the eta = 0 kernel");
    return s;
}

struct Options {
    std::uint64_t seed = 1;
    int count = 20;
    bool exact = true;
    double tolerance = 1e-9;
    std::vector<Fixture> extra;
};

/// Every suite over seeded random structures, the fixed fixtures and any extra inputs.
inline std::vector<SuiteResult> run_all(const Options& opt) {
    auto fx = fixed_fixtures();
    for (auto& f : random_fixtures(opt.seed, opt.count)) fx.push_back(std::move(f));
    for (const auto& f : opt.extra) fx.push_back(f);

    // structures failing the contact or canonical checks only enter the structure suite
    std::vector<Fixture> valid;
    for (const auto& f : fx)
        if (validate_canonical(f.constants).canonical) valid.push_back(f);

    std::vector<SuiteResult> out;
    if (opt.exact) {
        out.push_back(structure_suite<Rational>(fx, 0.0));
        out.push_back(curvature_suite<Rational>(valid, opt.seed, 0.0));
        out.push_back(flatness_suite<Rational>(valid, opt.seed, 0.0));
    } else {
        out.push_back(structure_suite<double>(fx, opt.tolerance));
        out.push_back(curvature_suite<double>(valid, opt.seed, opt.tolerance));
        out.push_back(flatness_suite<double>(valid, opt.seed, opt.tolerance));
    }
    out.push_back(jet_suite(opt.seed));
    out.push_back(rescaling_suite(opt.seed));
    out.push_back(chains_suite(valid, opt.seed));
    out.push_back(heisenberg_suite());
    return out;
}

}  // namespace subriem::verify
