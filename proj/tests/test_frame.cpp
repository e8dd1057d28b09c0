#include <gtest/gtest.h>

#include <random>

#include "subriem/frame.hpp"

using namespace subriem;

namespace {

const Point<Complex> kOrigin{Complex(0), Complex(0), Complex(0)};

CoordVectorField d(int k) {
    CoordVectorField X{{Expr(0), Expr(0), Expr(0)}};
    X.c[k] = Expr(1);
    return X;
}

double max_abs(const VecJet<Complex>& v) {
    double m = 0;
    for (const auto& c : v) m = std::max(m, c.max_abs());
    return m;
}

VecJet<Complex> sub(const VecJet<Complex>& a, const VecJet<Complex>& b) {
    VecJet<Complex> r;
    for (int k = 0; k < 3; ++k) r[k] = a[k] - b[k];
    return r;
}

VecJet<Complex> add(const VecJet<Complex>& a, const VecJet<Complex>& b) {
    VecJet<Complex> r;
    for (int k = 0; k < 3; ++k) r[k] = a[k] + b[k];
    return r;
}

std::array<Complex, 6> constants_at(const Frame& fr, const Point<Complex>& p) {
    const auto sf = structure_functions(fr, p, 2);
    std::array<Complex, 6> out;
    for (int k = 0; k < 6; ++k) out[k] = sf[k].value();
    return out;
}

void expect_constants(const Frame& fr, const Point<Complex>& p, const std::array<double, 6>& want) {
    const auto got = constants_at(fr, p);
    for (int k = 0; k < 6; ++k)
        EXPECT_LE(std::abs(got[k] - want[k]), 1e-12) << StructureConstants<double>::names[k];
}

}  // namespace

TEST(LieBracket, CoordinateFieldsCommute) {
    EXPECT_EQ(max_abs(lie_bracket(d(0), d(1), kOrigin, 3)), 0.0);
}

TEST(LieBracket, HeisenbergBracketIsReeb) {
    const Frame h = model_frame(ModelKind::heisenberg);
    const Point<Complex> p{Complex(0.3), Complex(-0.7), Complex(2.0)};
    const auto b = lie_bracket(h.f2, h.f1, p, 3);
    EXPECT_LE(max_abs(sub(b, h.f0.jets(p, 3))), 1e-15);
}

TEST(LieBracket, ModelOneBrackets) {
    const Frame m = model_frame(ModelKind::unimodular_i);
    const auto b21 = lie_bracket(m.f2, m.f1, kOrigin, 2);
    EXPECT_LE(max_abs(sub(b21, m.f0.jets(kOrigin, 2))), 1e-14);
    const auto b10 = lie_bracket(m.f1, m.f0, kOrigin, 2);
    EXPECT_LE(max_abs(add(b10, m.f2.jets(kOrigin, 2))), 1e-14);
    const auto b20 = lie_bracket(m.f2, m.f0, kOrigin, 2);
    EXPECT_LE(max_abs(sub(b20, m.f1.jets(kOrigin, 2))), 1e-14);
}

TEST(LieBracket, OrderBeyondMaximumThrows) {
    EXPECT_THROW(lie_bracket(d(0), d(1), kOrigin, kMaxJetOrder), OrderExhausted);
}

TEST(LieBracket, JacobiOnRandomPolynomialFields) {
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<int> coef(-3, 3);
    const Expr x = Expr::x(), y = Expr::y(), z = Expr::z();
    const Expr mon[] = {Expr(1), x, y, z, x * y, y * z, x * z, x * x, z * z};
    auto field = [&] {
        CoordVectorField V;
        for (auto& c : V.c) {
            Expr e(0);
            for (const auto& m : mon) e = e + Expr(coef(rng)) * m;
            c = e;
        }
        return V;
    };
    const Point<Complex> p{Complex(0.2), Complex(0.1), Complex(-0.4)};
    for (int trial = 0; trial < 5; ++trial) {
        const auto X = field().jets(p, 4), Y = field().jets(p, 4), Z = field().jets(p, 4);
        const auto j = add(add(bracket(bracket(X, Y), Z), bracket(bracket(Y, Z), X)), bracket(bracket(Z, X), Y));
        EXPECT_LE(max_abs(j), 1e-12);
    }
}

TEST(StructureFunctions, HeisenbergVanish) {
    const auto sf = structure_functions(model_frame(ModelKind::heisenberg), kOrigin, 3);
    for (int k = 0; k < 6; ++k) EXPECT_EQ(sf[k].max_abs(), 0.0);
}

TEST(StructureFunctions, ModelOneConstants) {
    expect_constants(model_frame(ModelKind::unimodular_i), kOrigin, {0, 0, 0, -1, 1, 0});
}

TEST(StructureFunctions, ModelTwoAndThreeConstants) {
    const Point<Complex> p{Complex(0.1), Complex(0.2), Complex(0.3)};
    expect_constants(model_frame(ModelKind::unimodular_ii), p, {0, 0, 0, 1, -1, 0});
    expect_constants(model_frame(ModelKind::unimodular_iii), p, {0, 0, 0, 1, 1, 0});
}

TEST(StructureFunctions, SolvPlusCoordinateModel) {
    const Point<Complex> p{Complex(0.4), Complex(-0.3), Complex(0.2)};
    expect_constants(model_frame(ModelKind::solv_plus, Rational(1)), p, {0, 1, 0, 2.0 / 9.0, 0, 0});
    expect_constants(solv_plus_frame(Rational(3), Rational(2)), p, {0, 3, 0, 2, 0, 0});
    expect_constants(solv_minus_frame(Rational(3), Rational(2)), p, {3, 0, 0, 0, 2, 0});
}

TEST(StructureFunctions, RealSl2Chart) {
    const Point<Complex> p{Complex(0.2), Complex(-0.1), Complex(0.3)};
    expect_constants(sl2_real_frame(), p, {0, 0, 0, 1, 1, 0});
}

TEST(StructureFunctions, ModelInvariants) {
    const std::pair<ModelKind, std::array<double, 2>> cases[] = {
        {ModelKind::unimodular_i, {0, -1}}, {ModelKind::unimodular_ii, {0, 1}}, {ModelKind::unimodular_iii, {1, 0}}};
    const Point<Complex> p{Complex(0.25), Complex(0.5), Complex(-0.75)};
    for (const auto& [kind, want] : cases) {
        auto fj = evaluate(model_frame(kind), p, 4);
        FrameCalculus<Complex> calc{fj};
        const auto inv = chi_kappa(structure_functions(fj), calc);
        EXPECT_LE(std::abs(inv.chi.value() - want[0]), 1e-12) << to_string(kind);
        EXPECT_LE(std::abs(inv.kappa.value() - want[1]), 1e-12) << to_string(kind);
    }
}

TEST(StructureFunctions, ModelJacobiRelationsAsJets) {
    const Point<Complex> p{Complex(-0.2), Complex(0.3), Complex(0.6)};
    for (auto kind : {ModelKind::heisenberg, ModelKind::unimodular_i, ModelKind::unimodular_ii,
                      ModelKind::unimodular_iii, ModelKind::solv_plus}) {
        auto fj = evaluate(model_frame(kind), p, 5);
        const auto jac = jacobi_residuals(structure_functions(fj), fj);
        EXPECT_LE(std::max(jac[0].max_abs(), jac[1].max_abs()), 1e-12) << to_string(kind);
    }
}

TEST(StructureFunctions, NonContactFrameThrows) {
    const Frame coord{d(2), d(1), d(0)};
    EXPECT_THROW(structure_functions(coord, kOrigin, 2), NotAContactFrame);
    const Frame degenerate{d(0), d(0), d(1)};
    EXPECT_THROW(structure_functions(degenerate, kOrigin, 2), NotAContactFrame);
}

TEST(ModelFrame, ModelTwoAtOrigin) {
    const Frame m = model_frame(ModelKind::unimodular_ii);
    const auto c = m.f1.jets(kOrigin, 0);
    EXPECT_EQ(c[0].value(), Complex(0, 1));
    EXPECT_EQ(c[1].value(), Complex(0));
    EXPECT_EQ(c[2].value(), Complex(0, 1));
}

TEST(ModelFrame, HeisenbergFieldsVerbatim) {
    const Frame h = model_frame(ModelKind::heisenberg);
    const Point<Complex> p{Complex(2), Complex(4), Complex(0)};
    EXPECT_EQ(h.f1.jets(p, 0)[2].value(), Complex(1));
    EXPECT_EQ(h.f2.jets(p, 0)[2].value(), Complex(-2));
    EXPECT_EQ(h.f0.jets(p, 0)[2].value(), Complex(1));
}

TEST(FrameDeterminant, NonzeroOnModels) {
    for (auto kind : {ModelKind::heisenberg, ModelKind::unimodular_i, ModelKind::unimodular_iii}) {
        const auto det = frame_determinant(evaluate(model_frame(kind), kOrigin, 1));
        EXPECT_GT(std::abs(det.value()), 0.5) << to_string(kind);
    }
}
