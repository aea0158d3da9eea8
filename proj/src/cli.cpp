#include "symplab/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <memory>

#include "symplab/io.hpp"
#include "symplab/moser.hpp"
#include "symplab/suites.hpp"

namespace symplab {

namespace {

int cmd_run(const std::string& scenario_path, const std::string& out_path, int64_t seed,
            double tolerance_scale) {
    Scenario sc = load_scenario(scenario_path);
    if (seed >= 0) sc.fields.seed = static_cast<uint64_t>(seed);
    if (tolerance_scale >= 0.0) sc.tolerances.scale = tolerance_scale;
    RunReport report = run_scenario(sc);
    if (!out_path.empty()) emit_report(report, out_path);
    for (const SuiteReport& s : report.suites) {
        std::cout << (s.pass ? "[PASS] " : "[FAIL] ") << s.suite << " ("
                  << s.records.size() << " records)\n";
        for (const SuiteRecord& r : s.records)
            if (!r.pass) std::cout << "       failed: " << r.tag << " residual "
                                   << r.residual << " tolerance " << r.tolerance << "\n";
    }
    std::cout << (report.aggregate_pass ? "all suites passed" : "suite failures present")
              << "\n";
    return report.aggregate_pass ? 0 : 1;
}

int cmd_moser(const std::string& embedding_path, const std::string& scenario_path, int steps,
              const std::string& out_path, const std::string& out_embedding) {
    std::shared_ptr<const AmbientModel> model;
    std::unique_ptr<Scenario> sc;
    if (!scenario_path.empty()) {
        sc = std::make_unique<Scenario>(load_scenario(scenario_path));
        model = sc->make_model();
    }
    // Without a scenario the model defaults to the standard form with the
    // half-dimension read from the embedding header.
    Embedding f = [&]() {
        if (model) return load_embedding(embedding_path, model);
        std::ifstream in(embedding_path);
        if (!in) throw IoError("cannot read " + embedding_path);
        std::string line;
        std::getline(in, line);
        const int n = nlohmann::json::parse(line).at("n").get<int>();
        model = AmbientModel::standard(n);
        return load_embedding(embedding_path, model);
    }();
    AreaForm sigma = sc ? sc->make_sigma(f.grid()) : AreaForm::constant(f.grid(), 1.0);
    const int use_steps = steps > 0 ? steps : (sc ? sc->moser_steps : 50);
    const double tol = sc ? sc->tolerances.scaled().moser : 1e-4;

    MoserResult m = moser_reparametrize(f, sigma, use_steps, tol, InterpMode::fourier);
    nlohmann::json j = {{"residual", m.residual},
                        {"min_path_density", m.min_path_density},
                        {"steps", m.steps},
                        {"converged", m.converged},
                        {"max_displacement", m.phi.displacement_norm()},
                        {"min_jacobian", m.phi.min_jacobian()}};
    if (!out_path.empty()) {
        std::ofstream out(out_path);
        if (!out) throw IoError("cannot write " + out_path);
        out << j.dump(2) << "\n";
    }
    if (!out_embedding.empty()) save_embedding(out_embedding, m.reparametrized);
    std::cout << j.dump(2) << "\n";
    return m.converged ? 0 : 1;
}

int cmd_info(const std::string& embedding_path, const std::string& scenario_path) {
    std::shared_ptr<const AmbientModel> model;
    std::unique_ptr<Scenario> sc;
    if (!scenario_path.empty()) {
        sc = std::make_unique<Scenario>(load_scenario(scenario_path));
        model = sc->make_model();
    } else {
        std::ifstream in(embedding_path);
        if (!in) throw IoError("cannot read " + embedding_path);
        std::string line;
        std::getline(in, line);
        model = AmbientModel::standard(nlohmann::json::parse(line).at("n").get<int>());
    }
    Embedding f = load_embedding(embedding_path, model);
    AreaForm sigma = sc ? sc->make_sigma(f.grid()) : AreaForm::constant(f.grid(), 1.0);
    const double res = symplectic_residual(f, sigma);
    const ScalarGrid& s = f.pullback().density;

    std::cout << "embedding: " << embedding_path << "\n"
              << "  grid: " << f.grid().nx << " x " << f.grid().ny << ", ambient half-dim "
              << f.model().half_dim() << "\n"
              << "  winding:";
    for (int r = 0; r < f.winding().rows(); ++r)
        std::cout << " (" << f.winding()(r, 0) << "," << f.winding()(r, 1) << ")";
    std::cout << "\n"
              << "  pullback density: min " << s.min() << ", max " << s.max() << ", area "
              << s.mean() << "\n"
              << "  min Gram det: " << f.min_gram_det() << "\n";
    if (res <= 1e-8)
        std::cout << "  symplectic embedding, residual " << res << "\n";
    else
        std::cout << "  not symplectic for this sigma, residual " << res << "\n";
    return 0;
}

} // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"numerical laboratory for surface-space pairings on flat-torus models"};
    app.require_subcommand(1);

    std::string scenario_path, out_path, embedding_path, out_embedding;
    int64_t seed = -1;
    double tolerance_scale = -1.0;
    int steps = 0;

    CLI::App* run = app.add_subcommand("run", "run verification suites from a scenario");
    run->add_option("--scenario", scenario_path, "scenario JSON file")->required();
    run->add_option("--out", out_path, "report JSON output path");
    run->add_option("--seed", seed, "override the scenario seed");
    run->add_option("--tolerance-scale", tolerance_scale,
                    "override the scenario tolerance scale");

    CLI::App* moser = app.add_subcommand("moser", "normalize an embedding's pullback");
    moser->add_option("--embedding", embedding_path, "embedding file")->required();
    moser->add_option("--scenario", scenario_path, "scenario providing model and sigma");
    moser->add_option("--steps", steps, "flow steps");
    moser->add_option("--out", out_path, "result JSON output path");
    moser->add_option("--out-embedding", out_embedding, "normalized embedding output path");

    CLI::App* info = app.add_subcommand("info", "print embedding statistics");
    info->add_option("--embedding", embedding_path, "embedding file")->required();
    info->add_option("--scenario", scenario_path, "scenario providing model and sigma");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (run->parsed()) return cmd_run(scenario_path, out_path, seed, tolerance_scale);
        if (moser->parsed())
            return cmd_moser(embedding_path, scenario_path, steps, out_path, out_embedding);
        if (info->parsed()) return cmd_info(embedding_path, scenario_path);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

} // namespace symplab
