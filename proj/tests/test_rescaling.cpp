#include <gtest/gtest.h>

#include <random>

#include "subriem/rescaling.hpp"

using namespace subriem;

namespace {

const Expr X = Expr::x(), Y = Expr::y(), Z = Expr::z();

Point<Complex> cpoint(double a, double b, double c) { return {Complex(a), Complex(b), Complex(c)}; }

double field_difference(const Frame& a, const Frame& b, const Point<Complex>& p, int order = 3) {
    double m = 0;
    for (int i = 0; i < 3; ++i) {
        const auto ja = a[i].jets(p, order), jb = b[i].jets(p, order);
        for (int k = 0; k < 3; ++k) m = std::max(m, (ja[k] - jb[k]).max_abs());
    }
    return m;
}

Expr random_cubic(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> c(-2, 2);
    const Expr mon[] = {X, Y, Z, X * Y, Y * Z, X * X, Z * Z, X * Y * Z, pow(X, 3), pow(Y, 3)};
    Expr e(0);
    for (const auto& m : mon) e = e + Expr(make_rational(c(rng), 4)) * m;
    return e;
}

}  // namespace

TEST(RescaleFrame, ZeroIsIdentity) {
    const Frame fr = model_frame(ModelKind::unimodular_i);
    EXPECT_EQ(field_difference(rescale_frame(fr, Expr(0)), fr, cpoint(0.1, 0.2, 0.3)), 0.0);
}

TEST(RescaleFrame, HeisenbergLinearPhi) {
    const Frame h = model_frame(ModelKind::heisenberg);
    const Frame r = rescale_frame(h, X);
    const Frame expected{(h.f0 + h.f1.scaled(Expr(2))).scaled(exp(Expr(-2) * X)), h.f1.scaled(exp(-X)),
                         h.f2.scaled(exp(-X))};
    EXPECT_LE(field_difference(r, expected, cpoint(0.4, -0.3, 0.8)), 1e-14);
}

TEST(RescaleFrame, StillAContactFrame) {
    const Frame r = rescale_frame(model_frame(ModelKind::solv_plus), X * Y - Z / 3);
    EXPECT_NO_THROW(structure_functions(r, cpoint(0.1, 0.1, 0.1), 3));
}

TEST(RescaleConstants, CrossCheckAgainstFrameRescaling) {
    std::mt19937_64 rng(2);
    for (auto kind : {ModelKind::heisenberg, ModelKind::unimodular_i, ModelKind::unimodular_ii,
                      ModelKind::solv_plus}) {
        const Expr phi = random_cubic(rng);
        EXPECT_LE(rescaling_cross_check(model_frame(kind), phi, cpoint(0.2, -0.1, 0.3), 3), 1e-10) << to_string(kind);
    }
}

TEST(RescaleConstants, ZeroIsIdentity) {
    const Point<Complex> p = cpoint(0.3, 0.1, -0.2);
    auto fj = evaluate(model_frame(ModelKind::unimodular_i), p, 4);
    FrameCalculus<Complex> calc{fj};
    const auto sf = structure_functions(fj);
    const auto r = rescale_constants(sf, Expr(0).jet<Complex>(p, 5), calc);
    for (int k = 0; k < 6; ++k) EXPECT_LE((r[k] - sf[k]).max_abs(), 1e-14);
}

TEST(RescaleConstants, HeisenbergHorizontalGradient) {
    // on the Heisenberg frame f2 = d/dx - (y/2) d/dz, so f2(x) = 1
    const Point<Complex> p = cpoint(0.5, 0.0, 0.0);
    auto fj = evaluate(model_frame(ModelKind::heisenberg), p, 3);
    FrameCalculus<Complex> calc{fj};
    const auto r = rescale_constants(structure_functions(fj), X.jet<Complex>(p, 4), calc);
    EXPECT_LE(std::abs(r.c12_1.value() - (-3.0 * std::exp(-0.5))), 1e-14);
}

TEST(RescaleConstants, SolvFlatteningKillsC12) {
    const Point<Complex> p = cpoint(0.2, 0.4, -0.1);
    auto fj = evaluate(model_frame(ModelKind::solv_plus, Rational(1)), p, 3);
    FrameCalculus<Complex> calc{fj};
    const auto r = rescale_constants(structure_functions(fj), (-(X / 3)).jet<Complex>(p, 4), calc);
    EXPECT_LE(r.c12_2.max_abs(), 1e-14);
}

TEST(RescaledInvariants, ZeroKeepsInvariants) {
    const auto r = rescaled_invariants(model_frame(ModelKind::unimodular_ii), Expr(0), cpoint(0.1, 0.2, 0.3), 3);
    EXPECT_LE(std::abs(r.invariants.chi.value()), 1e-12);
    EXPECT_LE(std::abs(r.invariants.kappa.value() - 1.0), 1e-12);
}

TEST(RescaledInvariants, ModelOneFlattens) {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(-0.5, 0.5);
    for (int n = 0; n < 5; ++n) {
        const auto r = rescaled_invariants(model_frame(ModelKind::unimodular_i), Y / 2,
                                           cpoint(u(rng), u(rng), u(rng)), 3);
        EXPECT_LE(std::abs(r.invariants.chi.value()), 1e-10);
        EXPECT_LE(std::abs(r.invariants.kappa.value()), 1e-10);
        EXPECT_LE(r.kappa_expression.max_abs(), 1e-10);
        EXPECT_LE(r.chi_expression.max_abs(), 1e-10);
    }
}

TEST(RescaledInvariants, KappaExpressionFactorIsExpTwoPhi) {
    const Point<Complex> p = cpoint(0.1, -0.2, 0.3);
    const Expr phi = X * Y / 2 + Z / 5;
    const auto r = rescaled_invariants(model_frame(ModelKind::unimodular_i), phi, p, 3);
    ASSERT_TRUE(r.kappa_factor.has_value());
    EXPECT_LE(std::abs(*r.kappa_factor - std::exp(2.0 * phi.value(p))), 1e-10);
}

TEST(AlphaBetaScaling, ZeroAndConstant) {
    const Frame fr = model_frame(ModelKind::solv_plus);
    const Point<Complex> p = cpoint(0.1, 0.2, 0.3);
    const auto z = verify_alpha_beta_scaling(fr, Expr(0), p);
    EXPECT_LE(std::max(z[0], z[1]), 1e-14);
    const auto c = verify_alpha_beta_scaling(fr, Expr(make_rational(3, 4)), p);
    EXPECT_LE(std::max(c[0], c[1]), 1e-13);
}

TEST(AlphaBetaScaling, RandomCubicsOnSolvModel) {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u(-0.4, 0.4);
    for (int n = 0; n < 3; ++n) {
        const Expr phi = random_cubic(rng);
        const Point<Complex> p = cpoint(u(rng), u(rng), u(rng));
        const auto r = verify_alpha_beta_scaling(model_frame(ModelKind::solv_plus), phi, p, 1e-8, 5);
        EXPECT_LE(std::max(r[0], r[1]), 1e-8);
    }
}

TEST(AlphaBetaScaling, ViolationThrows) {
    EXPECT_THROW(verify_alpha_beta_scaling(model_frame(ModelKind::solv_plus), X, cpoint(0, 0, 0), -1.0),
                 ScalingViolation);
}

TEST(RescaleProperties, CompositionLaw) {
    const Frame fr = model_frame(ModelKind::unimodular_i);
    const Expr phi = X * Y / 3, psi = Z * Z / 4 - Y / 5;
    const Point<Complex> p = cpoint(0.2, 0.3, -0.4);
    EXPECT_LE(field_difference(rescale_frame(rescale_frame(fr, phi), psi), rescale_frame(fr, phi + psi), p), 1e-12);
}

TEST(RescaleProperties, HorizontalAreaScalesByExpTwoPhi) {
    const Frame fr = model_frame(ModelKind::solv_plus);
    const Expr phi = X * Z / 2 + Y / 3;
    const Point<Complex> p = cpoint(0.3, -0.2, 0.1);
    const auto fj = evaluate(fr, p, 0);
    const auto rj = evaluate(rescale_frame(fr, phi), p, 0);
    const auto det = frame_determinant(fj);
    const auto a = frame_coordinates(fj, rj.f[1], det), b = frame_coordinates(fj, rj.f[2], det);
    // (nu1 ^ nu2)(f1_phi, f2_phi) = exp(-2 phi), so nu1_phi ^ nu2_phi = exp(2 phi) nu1 ^ nu2 on the distribution
    const Complex area = a[1].value() * b[2].value() - a[2].value() * b[1].value();
    EXPECT_LE(std::abs(area - std::exp(-2.0 * phi.value(p))), 1e-14);
    EXPECT_LE(std::abs(frame_determinant(rj).value() - std::exp(-4.0 * phi.value(p)) * det.value()), 1e-13);
}

TEST(RescaleProperties, NormalizedAlphaIsPhiIndependent) {
    const Frame fr = model_frame(ModelKind::solv_plus);
    const Point<Complex> p = cpoint(0.1, 0.1, -0.2);
    const Expr phis[] = {Expr(0), X * Y / 2, Z * Z - X / 3};
    std::vector<Complex> normalized;
    for (const auto& phi : phis) {
        auto fj = evaluate(rescale_frame(fr, phi), p, 6);
        FrameCalculus<Complex> calc{fj};
        const auto cb = fefferman_curvature(structure_functions(fj), calc, 1e-9, false);
        normalized.push_back(cb.alpha.value() * std::exp(4.0 * phi.value(p)));
    }
    EXPECT_LE(std::abs(normalized[1] - normalized[0]), 1e-8);
    EXPECT_LE(std::abs(normalized[2] - normalized[0]), 1e-8);
}
