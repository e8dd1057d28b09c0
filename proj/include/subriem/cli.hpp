#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "verify.hpp"

namespace subriem::cli {

using Json = nlohmann::ordered_json;

struct Settings {
    std::string backend = "rational";
    std::optional<double> tolerance;
    std::uint64_t seed = 1;

    template <class T>
    double tol() const {
        return tolerance.value_or(scalar_traits<T>::default_tolerance);
    }
};

struct Report {
    Json doc;
    int exit_code = 0;
};

/// Seventeen significant digits; non-finite values become null.
inline std::string format_number(double v) {
    if (!std::isfinite(v)) return "null";
    if (v == 0) return "0";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline void write_json(std::ostream& os, const Json& j, int indent = 0) {
    const std::string pad(indent + 2, ' '), close(indent, ' ');
    if (j.is_object()) {
        if (j.empty()) {
            os << "{}";
            return;
        }
        os << "{\n";
        bool first = true;
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (!first) os << ",\n";
            first = false;
            os << pad << Json(it.key()).dump() << ": ";
            write_json(os, it.value(), indent + 2);
        }
        os << "\n" << close << "}";
    } else if (j.is_array()) {
        if (j.empty()) {
            os << "[]";
            return;
        }
        bool scalar = true;
        for (const auto& e : j) scalar = scalar && !e.is_structured();
        if (scalar) {
            os << "[";
            for (std::size_t k = 0; k < j.size(); ++k) {
                if (k) os << ", ";
                write_json(os, j[k], indent);
            }
            os << "]";
            return;
        }
        os << "[\n";
        for (std::size_t k = 0; k < j.size(); ++k) {
            if (k) os << ",\n";
            os << pad;
            write_json(os, j[k], indent + 2);
        }
        os << "\n" << close << "]";
    } else if (j.is_number_float()) {
        os << format_number(j.get<double>());
    } else {
        os << j.dump();
    }
}

inline std::string dump(const Json& j) {
    std::ostringstream os;
    write_json(os, j);
    os << "\n";
    return os.str();
}

inline Json structure_json(const StructureConstants<Rational>& sc) {
    Json j = Json::object();
    for (int k = 0; k < 6; ++k) j[StructureConstants<Rational>::names[k]] = sc[k].str();
    return j;
}

inline Report error_report(const std::string& command, const std::string& message, int code = 2) {
    Report r;
    r.doc["command"] = command;
    r.doc["error"] = message;
    r.exit_code = code;
    return r;
}

/// Runs fn<T> on the requested backend; irrational square roots under the rational backend
/// fall back to floating point and the report says so.
template <class Fn>
Report with_backend(const std::string& command, const Settings& s, const StructureConstants<Rational>& sc, Fn fn) {
    auto stamp = [&](Report r, const std::string& used) {
        Json doc;
        doc["command"] = command;
        doc["backend"] = used;
        doc["structure"] = structure_json(sc);
        for (auto it = r.doc.begin(); it != r.doc.end(); ++it)
            if (it.key() != "command") doc[it.key()] = it.value();
        r.doc = std::move(doc);
        return r;
    };
    try {
        if (s.backend == "float") return stamp(fn(convert_constants<double>(sc), s.tol<double>()), "float");
        if (s.backend != "rational") return error_report(command, "unknown backend '" + s.backend + "'");
        try {
            return stamp(fn(sc, s.tol<Rational>()), "rational");
        } catch (const NotExact&) {
            return stamp(fn(convert_constants<double>(sc), s.tol<double>()), "float (irrational invariant)");
        }
    } catch (const Error& e) {
        return stamp(error_report(command, e.what()), s.backend);
    }
}

struct ClassifyOp {
    template <class T>
    Report operator()(const StructureConstants<T>& sc, double tol) const {
        Report r;
        const auto rep = validate_canonical(sc, tol);
        r.doc["canonical"] = rep.canonical;
        r.doc["violations"] = rep.violations;
        r.doc["orientation_normalized"] = rep.orientation_normalized;
        const auto kind = classify(sc, tol);
        const auto inv = chi_kappa(sc, tol);
        r.doc["kind"] = to_string(kind.kind);
        r.doc["unimodular"] = kind.unimodular;
        r.doc["chi"] = real_value(inv.chi);
        r.doc["kappa"] = real_value(inv.kappa);
        const auto pos = normalized_invariants(inv);
        r.doc["normalized"] = {pos[0], pos[1]};
        const auto cls = conformal_class_decision(sc);
        r.doc["alpha"] = real_value(cls.alpha);
        r.doc["flat"] = cls.conformally_flat;
        if (cls.conformally_flat)
            r.doc["conf_algebra"] = cls.algebra;
        else
            r.doc["rigid"] = {real_value(inv.chi), real_value(inv.kappa)};
        return r;
    }
};

inline Report cmd_classify(const StructureConstants<Rational>& sc, const Settings& s = {}) {
    return with_backend("classify", s, sc, ClassifyOp{});
}

struct CurvatureOp {
    template <class T>
    Report operator()(const StructureConstants<T>& sc, double tol) const {
        Report r;
        const auto inv = chi_kappa(sc, tol);
        const auto cb = fefferman_curvature(sc, tol, false);
        r.doc["chi"] = real_value(inv.chi);
        r.doc["kappa"] = real_value(inv.kappa);
        r.doc["scalar"] = real_value(cb.scalar);
        r.doc["alpha"] = real_value(cb.alpha);
        r.doc["beta"] = real_value(cb.beta);
        Json slots = Json::array();
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j)
                for (int k = 0; k < 4; ++k)
                    for (int l = k + 1; l < 4; ++l) {
                        if (4 * i + j > 4 * k + l) continue;
                        const double w = magnitude(cb.weyl[i][j][k][l]);
                        if (w > std::max(tol, 1e-12)) slots.push_back(Json{{"slot", {i, j, k, l}}, {"value", real_value(cb.weyl[i][j][k][l])}});
                    }
        r.doc["weyl_nonzero_slots"] = slots;
        Json res = Json::object();
        bool ok = true;
        for (const auto& [name, value] : cb.residuals) {
            res[name] = value;
            ok = ok && value <= tol;
        }
        r.doc["identity_residuals"] = res;
        r.exit_code = ok ? 0 : 1;
        return r;
    }
};

inline Report cmd_curvature(const StructureConstants<Rational>& sc, const Settings& s = {}) {
    return with_backend("curvature", s, sc, CurvatureOp{});
}

struct FlatnessOp {
    std::uint64_t seed;
    int points;

    template <class T>
    Report operator()(const StructureConstants<T>& sc, double tol) const {
        Report r;
        const auto v = flatness_verdict(sc, tol);
        r.doc["fefferman_flat"] = v.fefferman_flat;
        r.doc["family"] = to_string(v.family);
        r.doc["alpha"] = real_value(v.alpha);
        if (!v.phi) return r;
        r.doc["phi"] = v.phi->str();
        Json table = Json::array();
        double worst = 0;
        for (const auto& p : verify::sample_points(seed, points)) {
            const Point<Complex> q{p[0], p[1], p[2]};
            const auto ri = rescaled_invariants(*v.chart, *v.phi, q, 3);
            const double chi = magnitude(ri.invariants.chi.value()), kappa = magnitude(ri.invariants.kappa.value());
            worst = std::max({worst, chi, kappa});
            table.push_back(Json{{"point", {p[0], p[1], p[2]}}, {"chi_phi", chi}, {"kappa_phi", kappa}});
        }
        r.doc["residuals"] = table;
        r.doc["worst_residual"] = worst;
        r.exit_code = worst <= kFlatTolerance ? 0 : 1;
        return r;
    }

    static constexpr double kFlatTolerance = 1e-8;
};

inline Report cmd_flatness(const StructureConstants<Rational>& sc, const Settings& s = {}, int points = 10) {
    return with_backend("flatness", s, sc, FlatnessOp{s.seed, points});
}

inline Json drift_json(const DriftReport& d) {
    Json j;
    j["H"] = d.H;
    j["hinf"] = d.hinf;
    j["invariant_name"] = d.invariant_name;
    if (d.invariant)
        j["invariant"] = *d.invariant;
    else
        j["invariant"] = nullptr;
    return j;
}

inline std::string chain_csv(const ChainTrajectory& tr) {
    std::ostringstream os;
    os << "t,h0,h1,h2,hinf,H,invariant\n";
    for (const auto& s : tr.samples) {
        os << format_number(s.t) << "," << format_number(s.state.h0) << "," << format_number(s.state.h1) << ","
           << format_number(s.state.h2) << "," << format_number(s.state.hinf) << "," << format_number(s.H) << ","
           << (s.invariant ? format_number(*s.invariant) : std::string()) << "\n";
    }
    return os.str();
}

/// Integrates one chain; writes the CSV when a path is given.
inline Report cmd_chains(const StructureConstants<Rational>& sc, const ChainState& start, double T, double dt,
                         const std::string& csv_path = {}) {
    Report r;
    r.doc["command"] = "chains";
    r.doc["structure"] = structure_json(sc);
    try {
        const auto scd = convert_constants<double>(sc);
        const auto tr = integrate_chain(scd, start, T, dt);
        r.doc["T"] = T;
        r.doc["dt"] = dt;
        r.doc["steps"] = static_cast<std::int64_t>(tr.samples.size()) - 1;
        r.doc["start"] = {start.h0, start.h1, start.h2, start.hinf};
        const auto& end = tr.samples.back().state;
        r.doc["end"] = {end.h0, end.h1, end.h2, end.hinf};
        r.doc["light_like"] = std::abs(chain_hamiltonian(scd, start)) <= 1e-9;
        r.doc["drift"] = drift_json(tr.drift);
        if (!csv_path.empty()) {
            std::ofstream out(csv_path);
            if (!out) return error_report("chains", "cannot write '" + csv_path + "'");
            out << chain_csv(tr);
            r.doc["csv"] = csv_path;
        }
    } catch (const Error& e) {
        r.doc["error"] = e.what();
        r.exit_code = 2;
    }
    return r;
}

inline Report cmd_heisenberg_verify() {
    Report r;
    const auto c = heisenberg::verify();
    r.doc["command"] = "heisenberg verify";
    r.doc["dimension"] = c.dimension;
    r.doc["table_match"] = c.table_match;
    r.doc["orientation"] = c.orientation;
    r.doc["tanaka_jacobi"] = c.tanaka_jacobi;
    r.doc["grading"] = c.grading;
    r.doc["generators_conformal"] = c.generators_conformal;
    r.doc["eta_types"] = c.eta_types;
    r.doc["isometry_kernel"] = c.isometry_kernel;
    r.doc["su21_signature"] = {{"matches", c.su21_signature},
                               {"positive", c.su21_inertia[0]},
                               {"negative", c.su21_inertia[1]},
                               {"zero", c.su21_inertia[2]}};
    r.doc["su21_commutators"] = c.su21_commutators;
    r.doc["su21_traceless"] = c.su21_traceless;
    r.doc["oracle_dimension"] = c.oracle_dimension;
    r.doc["oracle_span"] = c.oracle_span;
    r.doc["passed"] = c.passed();
    r.exit_code = c.passed() ? 0 : 1;
    return r;
}

inline Report cmd_verify_all(std::uint64_t seed, int count, const std::vector<verify::Fixture>& extra = {},
                             const Settings& s = {}) {
    Report r;
    verify::Options opt;
    opt.seed = seed;
    opt.count = count;
    opt.exact = s.backend != "float";
    opt.tolerance = s.tol<double>();
    opt.extra = extra;
    r.doc["command"] = "verify-all";
    r.doc["backend"] = opt.exact ? "rational" : "float";
    r.doc["seed"] = seed;
    r.doc["count"] = count;
    Json suites = Json::array();
    bool ok = true;
    for (const auto& suite : verify::run_all(opt)) {
        ok = ok && suite.passed();
        suites.push_back(Json{{"name", suite.name},
                              {"cases", suite.cases},
                              {"worst_residual", suite.worst},
                              {"passed", suite.passed()},
                              {"failures", suite.failures}});
    }
    r.doc["suites"] = suites;
    r.doc["passed"] = ok;
    r.exit_code = ok ? 0 : 1;
    return r;
}

}  // namespace subriem::cli
