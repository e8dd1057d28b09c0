#include <gtest/gtest.h>

#include <random>

#include "subriem/fefferman.hpp"

using namespace subriem;

namespace {

using SC = StructureConstants<Rational>;
using Calc = ConstantCalculus<Rational>;

Rational q(int p, int d = 1) { return make_rational(p, d); }

SC make(Rational c12_1, Rational c12_2, Rational c10_1, Rational c10_2, Rational c20_1, Rational c20_2) {
    return make_constants(c12_1, c12_2, c10_1, c10_2, c20_1, c20_2);
}

const SC kHeisenberg{};
const SC kRigid = make(0, 0, 0, 3, 1, 0);
const SC kSolv = make(0, 1, 0, 1, 0, 0);

std::vector<SC> random_structures(std::uint64_t seed, int count) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> d(-12, 12), pos(1, 12);
    std::vector<SC> out;
    for (int n = 0; n < count; ++n) {
        switch (n % 3) {
            case 0: {
                const Rational chi = q(pos(rng) - 1, 4), kappa = q(d(rng), 4);
                out.push_back(make(0, 0, 0, chi + kappa, chi - kappa, 0));
                break;
            }
            case 1: out.push_back(make(0, q(pos(rng), 4), 0, q(pos(rng), 4), 0, 0)); break;
            default: out.push_back(make(q(pos(rng), 4), 0, 0, 0, q(pos(rng), 4), 0)); break;
        }
    }
    return out;
}

}  // namespace

TEST(FeffermanMetric, HeisenbergHasOnlyFixedEntries) {
    const auto m = fefferman_metric(kHeisenberg, Calc{});
    EXPECT_EQ(m.g[0][0], 0);
    EXPECT_EQ(m.g[0][3], q(2, 3));
    EXPECT_EQ(m.g[1][1], 1);
    EXPECT_EQ(m.g[2][2], 1);
    EXPECT_EQ(m.g[1][2], 0);
    EXPECT_EQ(m.g[3][3], 0);
}

TEST(FeffermanMetric, UnimodularEntries) {
    const auto m = fefferman_metric(kRigid, Calc{});
    EXPECT_EQ(m.g[0][0], 1);
    EXPECT_EQ(m.g_inv[3][3], q(-9, 4));
    EXPECT_EQ(m.inverse_residual, 0.0);
}

TEST(FeffermanMetric, InverseOnRandomInputs) {
    for (const auto& sc : random_structures(3, 12)) {
        const auto m = fefferman_metric(sc, Calc{});
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                Rational s = 0;
                for (int k = 0; k < 4; ++k) s += m.g[i][k] * m.g_inv[k][j];
                EXPECT_EQ(s, i == j ? 1 : 0);
            }
        EXPECT_EQ(m.g[0][1], -q(2, 3) * sc.c12_1);
        EXPECT_EQ(m.g[0][2], -q(2, 3) * sc.c12_2);
    }
}

TEST(SigmaTrace, Examples) {
    const auto z = sigma_trace(kHeisenberg, Calc{});
    EXPECT_EQ(z.f, 0);
    EXPECT_EQ(z.trace, 0);
    const auto u = sigma_trace(kRigid, Calc{});
    EXPECT_EQ(u.f, q(1, 4));
    EXPECT_EQ(u.trace, q(1, 4));
    const auto s = sigma_trace(kSolv, Calc{});
    EXPECT_EQ(s.trace, q(-1, 8));
    EXPECT_EQ(s.residual, 0);
}

TEST(LeviCivita, HeisenbergEntries) {
    const auto m = fefferman_metric(kHeisenberg, Calc{});
    const auto con = levi_civita(m, kHeisenberg, Calc{});
    // gamma[k][i][j] is the f_k-component of nabla_{f_i} f_j
    EXPECT_EQ(con.gamma[0][1][2], q(-1, 2));
    EXPECT_EQ(con.gamma[1][1][2], 0);
    EXPECT_EQ(con.gamma[2][1][2], 0);
    EXPECT_EQ(con.gamma[3][1][2], 0);
    EXPECT_EQ(con.gamma[2][1][3], q(1, 3));
    EXPECT_EQ(con.gamma[3][1][3], 0);
}

TEST(LeviCivita, ReebDerivativeOfFiberVanishes) {
    for (const auto& sc : random_structures(9, 9)) {
        const auto con = levi_civita(fefferman_metric(sc, Calc{}), sc, Calc{});
        for (int k = 0; k < 4; ++k) EXPECT_EQ(con.gamma[k][0][3], 0);
    }
}

TEST(LeviCivita, SolvEntryCarriesConstant) {
    const auto con = levi_civita(fefferman_metric(kSolv, Calc{}), kSolv, Calc{});
    EXPECT_EQ(con.gamma[2][1][3], q(1, 3));
    EXPECT_EQ(con.gamma[3][1][3], q(1, 3));
}

TEST(Curvature, HeisenbergIsConformallyFlat) {
    const auto cb = fefferman_curvature(kHeisenberg);
    EXPECT_EQ(cb.scalar, 0);
    EXPECT_EQ(cb.alpha, 0);
    EXPECT_EQ(cb.beta, 0);
    bool riemann_nonzero = false;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l) {
                    EXPECT_EQ(cb.weyl[i][j][k][l], 0);
                    riemann_nonzero = riemann_nonzero || cb.riemann_lowered[i][j][k][l] != 0;
                }
    EXPECT_TRUE(riemann_nonzero);
}

TEST(Curvature, UnimodularExample) {
    const auto cb = fefferman_curvature(kRigid);
    EXPECT_EQ(cb.scalar, q(3, 2));
    EXPECT_EQ(cb.alpha, -3);
    EXPECT_EQ(cb.beta, 0);
}

TEST(Curvature, SolvExampleRecoversChi) {
    const auto cb = fefferman_curvature(kSolv);
    EXPECT_EQ(cb.alpha, q(-7, 24));
    EXPECT_EQ(cb.beta, 0);
    EXPECT_EQ(cb.chi_squared, q(1, 4));
}

TEST(Curvature, IdentitiesExactOnRandomInputs) {
    for (const auto& sc : random_structures(1, 20)) {
        const auto cb = fefferman_curvature(sc);
        const auto inv = chi_kappa(sc);
        EXPECT_EQ(cb.scalar, q(3, 2) * inv.kappa);
        EXPECT_EQ(cb.chi_squared, inv.chi * inv.chi);
        EXPECT_EQ(cb.alpha, alpha_beta_left_invariant(sc)[0]);
        EXPECT_EQ(cb.beta, 0);
        for (const auto& [name, value] : cb.residuals) EXPECT_EQ(value, 0.0) << name;
    }
}

TEST(Curvature, WeylHasOneIndependentEntryOnLeftInvariantInputs) {
    // every nonzero Weyl slot is a fixed rational multiple of alpha
    const auto ref = fefferman_curvature(kRigid);
    ASSERT_EQ(ref.weyl[kAlphaSlot[0]][kAlphaSlot[1]][kAlphaSlot[2]][kAlphaSlot[3]], ref.alpha);
    for (const auto& sc : random_structures(2, 20)) {
        const auto cb = fefferman_curvature(sc);
        if (cb.alpha == 0) continue;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                for (int k = 0; k < 4; ++k)
                    for (int l = 0; l < 4; ++l)
                        EXPECT_EQ(cb.weyl[i][j][k][l] / cb.alpha, ref.weyl[i][j][k][l] / ref.alpha);
    }
}

TEST(Curvature, FloatBackendAgrees) {
    for (const auto& sc : random_structures(4, 9)) {
        const auto exact = fefferman_curvature(sc);
        const auto approx = fefferman_curvature(convert_constants<double>(sc));
        EXPECT_NEAR(approx.alpha, to_double(exact.alpha), 1e-12);
        EXPECT_NEAR(approx.scalar, to_double(exact.scalar), 1e-12);
    }
}

TEST(Curvature, ModelsSatisfyScalarIdentityPointwise) {
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> u(-0.5, 0.5);
    for (auto kind : {ModelKind::unimodular_i, ModelKind::unimodular_ii, ModelKind::unimodular_iii,
                      ModelKind::solv_plus}) {
        for (int n = 0; n < 3; ++n) {
            const Point<Complex> p{Complex(u(rng)), Complex(u(rng)), Complex(u(rng))};
            auto fj = evaluate(model_frame(kind), p, 4);
            FrameCalculus<Complex> calc{fj};
            const auto sf = structure_functions(fj);
            const auto cb = fefferman_curvature(sf, calc, 1e-9, false);
            EXPECT_LE(std::abs(cb.scalar.value() - 1.5 * kappa_of(sf, calc).value()), 1e-9) << to_string(kind);
            for (const auto& [name, value] : cb.residuals) EXPECT_LE(value, 1e-9) << to_string(kind) << " " << name;
        }
    }
}

TEST(Curvature, InconsistentInputRaisesIdentityViolation) {
    EXPECT_THROW(fefferman_curvature(make(0, 0, 1, 0, 0, 0)), IdentityViolation);
}
