#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "subriem/cli.hpp"

using namespace subriem;

namespace {

ChainState parse_state(const std::string& text) {
    std::array<double, 4> h{};
    std::stringstream in(text);
    std::string item;
    int k = 0;
    while (std::getline(in, item, ',')) {
        if (k == 4) throw ParseError("--state expects four comma-separated numbers h0,h1,h2,hinf");
        std::size_t used = 0;
        try {
            h[k] = std::stod(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != item.size()) throw ParseError("--state: cannot read '" + item + "' as a number");
        ++k;
    }
    if (k != 4) throw ParseError("--state expects four comma-separated numbers h0,h1,h2,hinf");
    return {h[0], h[1], h[2], h[3]};
}

int emit(const cli::Report& r, const std::string& json_out) {
    const std::string text = cli::dump(r.doc);
    if (json_out.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(json_out);
        if (!out) {
            std::cerr << "cannot write '" << json_out << "'\n";
            return 2;
        }
        out << text;
    }
    if (r.doc.contains("error")) std::cerr << "error: " << r.doc["error"].get<std::string>() << "\n";
    return r.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Conformal invariants of left-invariant sub-Riemannian contact structures in dimension three"};
    app.require_subcommand(1);

    cli::Settings settings;
    double tolerance = -1;
    std::string json_out;
    app.add_option("--backend", settings.backend, "Scalar backend")
        ->check(CLI::IsMember({"rational", "float"}))
        ->capture_default_str();
    app.add_option("--tolerance", tolerance, "Absolute tolerance (default: 0 exact, 1e-9 float)");
    app.add_option("--json-out", json_out, "Write the JSON report to this file instead of stdout");
    app.add_option("--seed", settings.seed, "Seed for sampled points and random structures")->capture_default_str();

    std::string structure;
    auto add_structure = [&](CLI::App* sub) {
        sub->add_option("--structure,structure", structure, "Structure-spec file")->required()->check(CLI::ExistingFile);
    };

    auto* classify = app.add_subcommand("classify", "Lie algebra kind, invariants and conformal class");
    add_structure(classify);
    auto* curvature = app.add_subcommand("curvature", "Fefferman curvature report");
    add_structure(curvature);
    auto* flatness = app.add_subcommand("flatness", "Flatness verdict with a flattening rescaling");
    add_structure(flatness);

    auto* chains = app.add_subcommand("chains", "Integrate a chain of the Fefferman metric");
    add_structure(chains);
    std::string state, csv;
    double T = 10, dt = 1e-3;
    chains->add_option("--state", state, "Initial fiber coordinates h0,h1,h2,hinf")->required();
    chains->add_option("--T", T, "Duration")->capture_default_str();
    chains->add_option("--dt", dt, "Step size")->capture_default_str();
    chains->add_option("--out", csv, "CSV trajectory output");

    auto* heis = app.add_subcommand("heisenberg", "Conformal algebra of the Heisenberg group");
    heis->require_subcommand(1);
    auto* heis_verify = heis->add_subcommand("verify", "Run the full conformal-algebra certificate");

    auto* verify_all = app.add_subcommand("verify-all", "Run every identity suite");
    int count = 20;
    std::vector<std::string> extra;
    verify_all->add_option("--count", count, "Number of random canonical structures")->capture_default_str();
    verify_all->add_option("--structure", extra, "Additional structure-spec files")->check(CLI::ExistingFile);

    CLI11_PARSE(app, argc, argv);
    if (tolerance >= 0) settings.tolerance = tolerance;

    try {
        if (classify->parsed()) return emit(cli::cmd_classify(load_structure_spec(structure), settings), json_out);
        if (curvature->parsed()) return emit(cli::cmd_curvature(load_structure_spec(structure), settings), json_out);
        if (flatness->parsed()) return emit(cli::cmd_flatness(load_structure_spec(structure), settings), json_out);
        if (chains->parsed())
            return emit(cli::cmd_chains(load_structure_spec(structure), parse_state(state), T, dt, csv), json_out);
        if (heis_verify->parsed()) return emit(cli::cmd_heisenberg_verify(), json_out);
        if (verify_all->parsed()) {
            std::vector<verify::Fixture> fx;
            for (const auto& path : extra) fx.push_back({path, load_structure_spec(path)});
            return emit(cli::cmd_verify_all(settings.seed, count, fx, settings), json_out);
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
