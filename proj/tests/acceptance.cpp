#include <cstdio>
#include <iomanip>
#include <random>
#include <sstream>

#include "subriem/cli.hpp"

using namespace subriem;

namespace {

using SC = StructureConstants<Rational>;
using Calc = ConstantCalculus<Rational>;

struct Outcome {
    bool pass = true;
    std::string detail;
};

Rational q(long p, long d = 1) { return make_rational(p, d); }

SC make(Rational c12_1, Rational c12_2, Rational c10_1, Rational c10_2, Rational c20_1, Rational c20_2) {
    return make_constants(c12_1, c12_2, c10_1, c10_2, c20_1, c20_2);
}

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2e", v);
    return buf;
}

std::vector<SC> seeded_structures() {
    std::vector<SC> out;
    for (const auto& f : verify::random_fixtures(2026, 20)) out.push_back(f.constants);
    return out;
}

const ModelKind kModels[] = {ModelKind::unimodular_i, ModelKind::unimodular_ii, ModelKind::unimodular_iii};

std::vector<Point<Complex>> chart_points(std::uint64_t seed, int count, double radius = 0.5) {
    std::vector<Point<Complex>> out;
    for (const auto& p : verify::sample_points(seed, count, radius)) out.push_back({p[0], p[1], p[2]});
    return out;
}

Outcome scalar_curvature() {
    Outcome o;
    int exact_bad = 0;
    double float_worst = 0, model_worst = 0;
    for (const auto& sc : seeded_structures()) {
        const auto cb = fefferman_curvature(sc);
        if (cb.scalar != q(3, 2) * chi_kappa(sc).kappa) ++exact_bad;
        const auto d = convert_constants<double>(sc);
        const auto cf = fefferman_curvature(d);
        float_worst = std::max(float_worst, std::abs(cf.scalar - 1.5 * chi_kappa(d).kappa));
    }
    for (auto kind : kModels)
        for (const auto& p : chart_points(11, 10)) {
            auto fj = evaluate(model_frame(kind), p, 4);
            FrameCalculus<Complex> calc{fj};
            const auto sf = structure_functions(fj);
            const auto cb = fefferman_curvature(sf, calc, 1e-9, false);
            model_worst = std::max(model_worst, std::abs(cb.scalar.value() - 1.5 * kappa_of(sf, calc).value()));
        }
    o.pass = exact_bad == 0 && float_worst <= 1e-9 && model_worst <= 1e-9;
    o.detail = "rational mismatches " + std::to_string(exact_bad) + "/20, float " + sci(float_worst) + ", models (3 x 10 points) " +
               sci(model_worst);
    return o;
}

Outcome sigma_trace_identity() {
    Outcome o;
    int bad = 0;
    double model_worst = 0;
    for (const auto& sc : seeded_structures()) {
        const auto st = sigma_trace(sc, Calc{});
        if (st.trace != chi_kappa(sc).kappa / 4 || st.residual != 0) ++bad;
    }
    for (auto kind : kModels)
        for (const auto& p : chart_points(11, 10)) {
            auto fj = evaluate(model_frame(kind), p, 4);
            FrameCalculus<Complex> calc{fj};
            const auto sf = structure_functions(fj);
            const auto st = sigma_trace(sf, calc);
            model_worst = std::max(model_worst, std::abs(st.trace.value() - 0.25 * kappa_of(sf, calc).value()));
        }
    o.pass = bad == 0 && model_worst <= 1e-9;
    o.detail = "rational mismatches " + std::to_string(bad) + "/20, models (3 x 10 points) " + sci(model_worst);
    return o;
}

Outcome chi_recovery() {
    Outcome o;
    double worst = 0;
    int exact_bad = 0;
    for (int n = 0; n < 20; ++n) {
        const Rational chi = q(3 * n, 19);
        const SC sc = n % 2 == 0 ? make(0, 0, 0, chi + q(n - 8, 4), chi - q(n - 8, 4), 0)
                                 : make(0, q(n + 3, 4), 0, 2 * chi, 0, 0);
        const auto exact = fefferman_curvature(sc);
        if (exact.nabla_inf_norm2 * q(9, 16) != chi * chi) ++exact_bad;
        const auto cb = fefferman_curvature(convert_constants<double>(sc));
        const double c = to_double(chi);
        worst = std::max(worst, std::abs(std::sqrt(9.0 / 16 * cb.nabla_inf_norm2) - c));
    }
    o.pass = worst <= 1e-8 && exact_bad == 0;
    o.detail = "20 structures, chi in [0, 3]: float " + sci(worst) + ", rational mismatches " + std::to_string(exact_bad);
    return o;
}

Outcome weyl_two_entries() {
    Outcome o;
    const auto ref = fefferman_curvature(make(0, 0, 0, 3, 1, 0));
    int ratio_bad = 0, beta_bad = 0;
    double closed_worst = 0;
    for (const auto& sc : seeded_structures()) {
        const auto cb = fefferman_curvature(sc);
        if (cb.beta != 0) ++beta_bad;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                for (int k = 0; k < 4; ++k)
                    for (int l = 0; l < 4; ++l) {
                        const Rational& w = cb.weyl[i][j][k][l];
                        const bool ok = cb.alpha == 0 ? w == 0 : w / cb.alpha == ref.weyl[i][j][k][l] / ref.alpha;
                        if (!ok) ++ratio_bad;
                    }
        const auto d = convert_constants<double>(sc);
        const auto cf = fefferman_curvature(d);
        const auto printed = alpha_beta_left_invariant(d);
        const auto by_invariants = verify::alpha_by_invariants(d, chi_kappa(d));
        closed_worst = std::max({closed_worst, std::abs(cf.alpha - printed[0]), std::abs(cf.beta - printed[1]),
                                 by_invariants ? std::abs(cf.alpha - *by_invariants) : 1.0});
    }
    o.pass = ratio_bad == 0 && beta_bad == 0 && closed_worst <= 1e-10;
    o.detail = "slots off the alpha multiple " + std::to_string(ratio_bad) + ", nonzero beta " + std::to_string(beta_bad) +
               ", closed forms " + sci(closed_worst);
    return o;
}

Expr random_cubic(std::mt19937_64& rng) {
    const Expr x = Expr::x(), y = Expr::y(), z = Expr::z();
    std::uniform_int_distribution<int> c(-3, 3);
    const Expr mon[] = {x, y, z, x * y, y * z, x * z, x * x, y * y, z * z, x * y * z, pow(x, 3), pow(y, 3), pow(z, 3)};
    Expr e(0);
    for (const auto& m : mon) e = e + Expr(make_rational(c(rng), 6)) * m;
    return e;
}

Outcome covariance() {
    Outcome o;
    std::mt19937_64 rng(31);
    const Frame fr = model_frame(ModelKind::solv_plus);
    double scaling = 0, cross = 0;
    for (int n = 0; n < 3; ++n) {
        const Expr phi = random_cubic(rng);
        for (const auto& p : chart_points(40 + n, 5, 0.4)) {
            const auto r = verify_alpha_beta_scaling(fr, phi, p, 1.0, 5);
            scaling = std::max({scaling, r[0], r[1]});
            cross = std::max(cross, rescaling_cross_check(fr, phi, p, 3));
        }
    }
    o.pass = scaling <= 1e-8 && cross <= 1e-10;
    o.detail = "alpha, beta scaling (5 points x 3 cubics) " + sci(scaling) + ", frame vs constant rescaling " + sci(cross);
    return o;
}

Outcome flatness() {
    Outcome o;
    const std::pair<const char*, SC> flat[] = {
        {"heisenberg", SC{}},
        {"nonunimodular_i", make(0, 3, 0, 2, 0, 0)},
        {"nonunimodular_ii", make(3, 0, 0, 0, -2, 0)},
        {"unimodular_i", make(0, 0, 0, -1, 1, 0)},
        {"unimodular_ii", make(0, 0, 0, 1, -1, 0)},
        {"unimodular_iii", make(0, 0, 0, 1, 1, 0)},
    };
    double worst = 0;
    std::string families;
    for (const auto& [name, sc] : flat) {
        const auto v = flatness_verdict(sc);
        if (!v.fefferman_flat || to_string(v.family) != std::string(name)) {
            o.pass = false;
            families += std::string(" wrong family for ") + name;
            continue;
        }
        for (const auto& p : chart_points(12, 10, 0.4)) {
            const auto r = rescaled_invariants(*v.chart, *v.phi, p, 3);
            worst = std::max({worst, std::abs(r.invariants.chi.value()), std::abs(r.invariants.kappa.value())});
        }
    }
    int closed_bad = 0, closed_checked = 0;
    std::mt19937_64 rng(13);
    std::uniform_int_distribution<int> d(-12, 12), pos(1, 12);
    for (int n = 0; n < 20; ++n) {
        const SC u = make(0, 0, 0, q(pos(rng), 4), q(d(rng), 4), 0);
        const SC s = make(0, q(pos(rng), 4), 0, q(pos(rng), 4), 0, 0);
        for (const auto& sc : {u, s}) {
            const auto rep = validate_canonical(sc);
            if (!rep.canonical || !rep.orientation_normalized) continue;
            ++closed_checked;
            const auto inv = chi_kappa(sc);
            const Rational want = sc.c12_2 == 0 ? q(-3, 2) * inv.kappa * inv.chi : -inv.chi * (inv.kappa + 8 * inv.chi) / 6;
            if (alpha_beta_left_invariant(sc)[0] != want || fefferman_curvature(sc).alpha != want) ++closed_bad;
        }
    }
    o.pass = o.pass && worst <= 1e-8 && closed_bad == 0 && closed_checked >= 20;
    o.detail = "six flat families at 10 points " + sci(worst) + ", closed-form mismatches " + std::to_string(closed_bad) + "/" +
               std::to_string(closed_checked) + families;
    return o;
}

Outcome chains() {
    Outcome o;
    std::ostringstream msg;
    for (const auto& [label, sc] : {std::pair{"unimodular", make(0, 0, 0, 1, 1, 0)}, std::pair{"solv+", make(0, 1, 0, 1, 0, 0)}}) {
        const auto d = convert_constants<double>(sc);
        const ChainState s0{light_like_h0(d, 2, 1, 2), 2, 1, 2, std::nullopt};
        const auto a = integrate_chain(d, s0, 10, 1e-3);
        const auto b = integrate_chain(d, s0, 10, 5e-4);
        const double bound = a.drift.invariant_name == "I" ? 1e-7 : 1e-6;
        const bool ok = a.drift.H <= 1e-8 && a.drift.hinf == 0 && a.drift.invariant && *a.drift.invariant <= bound &&
                        a.drift.H >= 8 * b.drift.H;
        o.pass = o.pass && ok;
        msg << label << ": dH " << sci(a.drift.H) << " dhinf " << sci(a.drift.hinf) << " d" << a.drift.invariant_name << " "
            << sci(a.drift.invariant.value_or(-1)) << " halving x" << std::setprecision(3) << a.drift.H / b.drift.H << "; ";
    }
    o.detail = msg.str();
    return o;
}

Outcome gradients() {
    Outcome o;
    double worst = 0;
    for (int i = 0; i <= 6; ++i)
        for (int j = -6; j <= 6; j += 2) {
            const double chi = 0.5 * i, kappa = 0.5 * j;
            const auto closed = unimodular_gradient_closed_form(chi, kappa);
            const auto exact = restricted_gradient(chi, kappa, GradientFamily::unimodular);
            worst = std::max({worst, std::abs(closed[0] - exact[0]), std::abs(closed[1] - exact[1])});
        }
    // chi - kappa = 1 throughout; kappa + 8 chi = 9 chi - 1 increases along the sweep
    std::ostringstream msg;
    double previous = -10;
    bool monotone = true;
    msg << std::setprecision(4);
    for (double chi : {0.2, 0.4, 0.6, 0.8, 1.0}) {
        const auto g = restricted_gradient(chi, chi - 1, GradientFamily::solv_plus);
        const double angle = std::atan2(g[1], g[0]);
        monotone = monotone && angle > previous;
        previous = angle;
        msg << " " << angle;
    }
    o.pass = worst <= 1e-10 && monotone;
    o.detail = "unimodular closed form vs restricted " + sci(worst) + ", solv+ gradient angles" + msg.str();
    return o;
}

Outcome heisenberg_certificate() {
    Outcome o;
    const auto cert = heisenberg::verify();
    o.pass = cert.passed();
    o.detail = "dimension " + std::to_string(cert.dimension) + ", solver dimension " + std::to_string(cert.oracle_dimension) +
               ", table " + (cert.table_match ? "matches" : "differs") + ", Jacobi " + (cert.tanaka_jacobi ? "ok" : "fails") +
               ", form inertia (" + std::to_string(cert.su21_inertia[0]) + "," + std::to_string(cert.su21_inertia[1]) + "," +
               std::to_string(cert.su21_inertia[2]) + ")";
    return o;
}

Outcome classification_sweep() {
    Outcome o;
    int wrong = 0, flat_count = 0, points = 0;
    auto check = [&](const SC& sc, bool expect_flat) {
        ++points;
        const auto r = cli::cmd_classify(sc);
        const auto inv = chi_kappa(sc);
        bool ok = r.exit_code == 0 && r.doc["flat"].get<bool>() == expect_flat;
        if (ok && expect_flat) ok = r.doc["conf_algebra"] == "su(2,1)" && !r.doc.contains("rigid");
        if (ok && !expect_flat)
            ok = !r.doc.contains("conf_algebra") &&
                 std::abs(r.doc["rigid"][0].get<double>() - to_double(inv.chi)) <= 1e-12 &&
                 std::abs(r.doc["rigid"][1].get<double>() - to_double(inv.kappa)) <= 1e-12;
        if (!ok) ++wrong;
        if (expect_flat) ++flat_count;
    };
    // unimodular rays through rational points (2t, 1 - t^2) / (1 + t^2) of the half circle, plus (0, -1)
    for (int k = 0; k <= 48; ++k) {
        const Rational t = q(k, 8), n = 1 + t * t;
        const Rational chi = 2 * t / n, kappa = (1 - t * t) / n;
        check(make(0, 0, 0, chi + kappa, chi - kappa, 0), chi * kappa == 0);
    }
    check(make(0, 0, 0, -1, 1, 0), true);
    // solv+ rays with chi - kappa = 1
    for (int k = 1; k <= 50; ++k) {
        const Rational chi = q(k, 45);
        const auto sc = make(0, 1, 0, 2 * chi, 0, 0);
        const auto inv = chi_kappa(sc);
        check(sc, inv.kappa + 8 * inv.chi == 0);
    }
    o.pass = wrong == 0 && points == 100;
    o.detail = std::to_string(points) + " points, " + std::to_string(flat_count) + " on the alpha = 0 locus, " +
               std::to_string(wrong) + " misreported";
    return o;
}

}  // namespace

int main() {
    const std::pair<const char*, Outcome (*)()> criteria[] = {
        {"scalar curvature R = 3/2 kappa", scalar_curvature},
        {"sigma trace = kappa / 4", sigma_trace_identity},
        {"chi recovered from the fibre derivative of R", chi_recovery},
        {"Weyl tensor has two independent entries", weyl_two_entries},
        {"conformal covariance of alpha and beta", covariance},
        {"flattening rescalings", flatness},
        {"chain integration drift", chains},
        {"foliation gradients", gradients},
        {"Heisenberg conformal algebra certificate", heisenberg_certificate},
        {"classification dichotomy sweep", classification_sweep},
    };
    int failed = 0;
    for (int i = 0; i < 10; ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        if (!o.pass) ++failed;
        std::printf("%s %2d %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
        std::fflush(stdout);
    }
    return failed == 0 ? 0 : 1;
}
