#include "symplab/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <set>

#include "symplab/io.hpp"

namespace symplab {

using nlohmann::json;

Tolerances Tolerances::scaled() const {
    Tolerances t = *this;
    t.fixture *= scale;
    t.identity *= scale;
    t.pointwise *= scale;
    t.pairing *= scale;
    t.potential *= scale;
    t.closed *= scale;
    t.period *= scale;
    t.stokes *= scale;
    t.moser *= scale;
    t.moser_idempotence *= scale;
    t.sympl_invariance *= scale;
    t.ham_c_steps4 *= scale;
    t.ham_c_grid2 *= scale;
    return t;
}

const std::vector<std::string>& all_suite_names() {
    static const std::vector<std::string> names = {
        "vanish",    "probe_converse", "exact_coincidence", "tangency",  "compat",
        "reduction", "invariance",     "holomorphic",       "closedness", "moser"};
    return names;
}

namespace {

void check_keys(const json& obj, const std::set<std::string>& allowed,
                const std::string& where) {
    if (!obj.is_object()) throw ScenarioError(where + ": expected a JSON object");
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (!allowed.count(it.key()))
            throw ScenarioError(where + ": unknown key '" + it.key() + "'");
}

FourierScalar parse_terms(const json& arr, int dim, bool with_component,
                          std::vector<std::pair<int, FourierScalar::Term>>* per_component,
                          const std::string& where) {
    FourierScalar out(dim);
    if (!arr.is_array()) throw ScenarioError(where + ": expected an array of terms");
    for (const json& t : arr) {
        check_keys(t,
                   with_component
                       ? std::set<std::string>{"component", "freq", "amplitude", "phase"}
                       : std::set<std::string>{"freq", "amplitude", "phase"},
                   where);
        FourierScalar::Term term;
        term.freq = t.at("freq").get<std::vector<int>>();
        if (static_cast<int>(term.freq.size()) != dim)
            throw ScenarioError(where + ": frequency vector has wrong length");
        term.amplitude = t.at("amplitude").get<double>();
        term.phase = t.value("phase", 0.0);
        if (with_component) {
            const int comp = t.at("component").get<int>();
            if (comp < 1 || comp > dim)
                throw ScenarioError(where + ": component index out of range (1-based)");
            per_component->emplace_back(comp - 1, term);
        } else {
            out.add(term.freq, term.amplitude, term.phase);
        }
    }
    return out;
}

} // namespace

std::shared_ptr<const AmbientModel> Scenario::make_model() const {
    Eigen::MatrixXd base = omega_standard ? AmbientModel::standard_form(n) : omega;
    return std::make_shared<AmbientModel>(n, std::move(base), eta);
}

double Scenario::sigma_value(double x, double y) const {
    Eigen::VectorXd q(2);
    q << x, y;
    return sigma_constant + sigma_terms.value(q);
}

AreaForm Scenario::make_sigma(TorusGrid g) const {
    ScalarGrid rho = sigma_terms.sample(g);
    for (double& v : rho.v) v += sigma_constant;
    return AreaForm(std::move(rho));
}

Embedding Scenario::make_embedding(std::shared_ptr<const AmbientModel> model,
                                   TorusGrid g) const {
    switch (embedding.family) {
        case EmbeddingSpec::Family::flat: return Embedding::flat(std::move(model), g);
        case EmbeddingSpec::Family::sheared:
            return Embedding::sheared(std::move(model), g, embedding.amplitude);
        case EmbeddingSpec::Family::file: return load_embedding(embedding.path, std::move(model));
    }
    throw ScenarioError("unreachable embedding family");
}

Scenario scenario_from_json(const json& j) {
    check_keys(j,
               {"schema_version", "ambient", "grid", "sigma", "embedding", "fields",
                "tolerances", "tolerance_scale", "flow_steps", "moser_steps", "suites"},
               "scenario");
    if (j.value("schema_version", 1) != 1)
        throw ScenarioError("scenario: unsupported schema_version");

    Scenario sc;

    const json& amb = j.at("ambient");
    check_keys(amb, {"n", "omega", "eta"}, "ambient");
    sc.n = amb.at("n").get<int>();
    if (sc.n < 2) throw ScenarioError("ambient: n must be >= 2");
    const int dim = 2 * sc.n;
    if (amb.contains("omega") && amb.at("omega").is_array()) {
        sc.omega_standard = false;
        const json& rows = amb.at("omega");
        if (static_cast<int>(rows.size()) != dim)
            throw ScenarioError("ambient: omega must be a 2n x 2n matrix");
        sc.omega = Eigen::MatrixXd::Zero(dim, dim);
        for (int r = 0; r < dim; ++r) {
            if (static_cast<int>(rows[static_cast<size_t>(r)].size()) != dim)
                throw ScenarioError("ambient: omega must be a 2n x 2n matrix");
            for (int c = 0; c < dim; ++c)
                sc.omega(r, c) = rows[static_cast<size_t>(r)][static_cast<size_t>(c)]
                                     .get<double>();
        }
    } else if (amb.contains("omega") && amb.at("omega").is_string()) {
        if (amb.at("omega").get<std::string>() != "standard")
            throw ScenarioError("ambient: omega must be 'standard' or a matrix");
        sc.omega_standard = true;
    }
    sc.eta.assign(static_cast<size_t>(dim), FourierScalar(dim));
    if (amb.contains("eta")) {
        std::vector<std::pair<int, FourierScalar::Term>> per_component;
        parse_terms(amb.at("eta"), dim, true, &per_component, "ambient.eta");
        for (auto& [comp, term] : per_component)
            sc.eta[static_cast<size_t>(comp)].add(term.freq, term.amplitude, term.phase);
    }

    if (j.contains("grid")) {
        const json& g = j.at("grid");
        check_keys(g, {"N_x", "N_y"}, "grid");
        sc.nx = g.at("N_x").get<int>();
        sc.ny = g.at("N_y").get<int>();
        if (sc.nx < 8 || sc.ny < 8) throw ScenarioError("grid: sizes must be at least 8");
    }

    if (j.contains("sigma")) {
        const json& s = j.at("sigma");
        check_keys(s, {"constant", "terms"}, "sigma");
        sc.sigma_constant = s.value("constant", 1.0);
        sc.sigma_terms = FourierScalar(2);
        if (s.contains("terms"))
            sc.sigma_terms = parse_terms(s.at("terms"), 2, false, nullptr, "sigma.terms");
    }

    if (j.contains("embedding")) {
        const json& e = j.at("embedding");
        check_keys(e, {"family", "amplitude", "path"}, "embedding");
        const std::string family = e.at("family").get<std::string>();
        if (family == "flat") {
            sc.embedding.family = EmbeddingSpec::Family::flat;
        } else if (family == "sheared") {
            sc.embedding.family = EmbeddingSpec::Family::sheared;
            sc.embedding.amplitude = e.at("amplitude").get<double>();
            if (std::abs(sc.embedding.amplitude) >= 1.0)
                throw ScenarioError("embedding: sheared amplitude must satisfy |a| < 1");
        } else if (family == "file") {
            sc.embedding.family = EmbeddingSpec::Family::file;
            sc.embedding.path = e.at("path").get<std::string>();
            std::ifstream probe(sc.embedding.path);
            if (!probe) throw ScenarioError("embedding: file does not exist: " +
                                            sc.embedding.path);
        } else {
            throw ScenarioError("embedding: unknown family '" + family + "'");
        }
    }

    if (j.contains("fields")) {
        const json& fjson = j.at("fields");
        check_keys(fjson, {"bandwidth", "ambient_bandwidth", "ambient_terms", "amplitude",
                           "seed"},
                   "fields");
        sc.fields.bandwidth = fjson.value("bandwidth", 3);
        sc.fields.ambient_bandwidth = fjson.value("ambient_bandwidth", 2);
        sc.fields.ambient_terms = fjson.value("ambient_terms", 8);
        sc.fields.amplitude = fjson.value("amplitude", 1.0);
        sc.fields.seed = fjson.value("seed", static_cast<uint64_t>(2026));
    }

    if (j.contains("tolerances")) {
        const json& t = j.at("tolerances");
        check_keys(t,
                   {"fixture", "identity", "pointwise", "pairing", "potential", "closed",
                    "period", "stokes", "moser", "moser_idempotence", "sympl_invariance",
                    "ham_c_steps4", "ham_c_grid2"},
                   "tolerances");
        Tolerances& tol = sc.tolerances;
        tol.fixture = t.value("fixture", tol.fixture);
        tol.identity = t.value("identity", tol.identity);
        tol.pointwise = t.value("pointwise", tol.pointwise);
        tol.pairing = t.value("pairing", tol.pairing);
        tol.potential = t.value("potential", tol.potential);
        tol.closed = t.value("closed", tol.closed);
        tol.period = t.value("period", tol.period);
        tol.stokes = t.value("stokes", tol.stokes);
        tol.moser = t.value("moser", tol.moser);
        tol.moser_idempotence = t.value("moser_idempotence", tol.moser_idempotence);
        tol.sympl_invariance = t.value("sympl_invariance", tol.sympl_invariance);
        tol.ham_c_steps4 = t.value("ham_c_steps4", tol.ham_c_steps4);
        tol.ham_c_grid2 = t.value("ham_c_grid2", tol.ham_c_grid2);
    }
    sc.tolerances.scale = j.value("tolerance_scale", 1.0);

    sc.flow_steps = j.value("flow_steps", 200);
    sc.moser_steps = j.value("moser_steps", 50);
    if (sc.flow_steps < 1 || sc.moser_steps < 1)
        throw ScenarioError("flow_steps and moser_steps must be >= 1");

    sc.suites = j.value("suites", all_suite_names());
    for (const std::string& s : sc.suites)
        if (std::find(all_suite_names().begin(), all_suite_names().end(), s) ==
            all_suite_names().end())
            throw ScenarioError("suites: unknown suite '" + s + "'");

    // Anti-aliasing margin for every analytic generator sampled on the grid.
    const int nmin = std::min(sc.nx, sc.ny);
    auto check_bw = [&](int bw, const std::string& what) {
        if (bw < 1) throw ScenarioError(what + ": bandwidth must be >= 1");
        if (4 * bw >= nmin)
            throw ScenarioError(what + ": bandwidth " + std::to_string(bw) +
                                " violates bandwidth < N/4 with N = " + std::to_string(nmin));
    };
    check_bw(sc.fields.bandwidth, "fields.bandwidth");
    check_bw(sc.fields.ambient_bandwidth, "fields.ambient_bandwidth");
    if (sc.sigma_terms.bandwidth() > 0) check_bw(sc.sigma_terms.bandwidth(), "sigma.terms");

    return sc;
}

namespace {

json terms_to_json(const FourierScalar& f, int component /* -1: none */) {
    json arr = json::array();
    for (const FourierScalar::Term& t : f.terms()) {
        json tj;
        if (component >= 0) tj["component"] = component + 1;
        tj["freq"] = t.freq;
        tj["amplitude"] = t.amplitude;
        tj["phase"] = t.phase;
        arr.push_back(tj);
    }
    return arr;
}

} // namespace

json scenario_to_json(const Scenario& sc) {
    json j;
    j["schema_version"] = 1;
    json amb;
    amb["n"] = sc.n;
    if (sc.omega_standard) {
        amb["omega"] = "standard";
    } else {
        json rows = json::array();
        for (int r = 0; r < sc.omega.rows(); ++r) {
            json row = json::array();
            for (int c = 0; c < sc.omega.cols(); ++c) row.push_back(sc.omega(r, c));
            rows.push_back(row);
        }
        amb["omega"] = rows;
    }
    json eta = json::array();
    for (size_t comp = 0; comp < sc.eta.size(); ++comp)
        for (const json& t : terms_to_json(sc.eta[comp], static_cast<int>(comp)))
            eta.push_back(t);
    amb["eta"] = eta;
    j["ambient"] = amb;

    j["grid"] = {{"N_x", sc.nx}, {"N_y", sc.ny}};
    j["sigma"] = {{"constant", sc.sigma_constant},
                  {"terms", terms_to_json(sc.sigma_terms, -1)}};

    json e;
    switch (sc.embedding.family) {
        case EmbeddingSpec::Family::flat: e["family"] = "flat"; break;
        case EmbeddingSpec::Family::sheared:
            e["family"] = "sheared";
            e["amplitude"] = sc.embedding.amplitude;
            break;
        case EmbeddingSpec::Family::file:
            e["family"] = "file";
            e["path"] = sc.embedding.path;
            break;
    }
    j["embedding"] = e;

    j["fields"] = {{"bandwidth", sc.fields.bandwidth},
                   {"ambient_bandwidth", sc.fields.ambient_bandwidth},
                   {"ambient_terms", sc.fields.ambient_terms},
                   {"amplitude", sc.fields.amplitude},
                   {"seed", sc.fields.seed}};

    const Tolerances& tol = sc.tolerances;
    j["tolerances"] = {{"fixture", tol.fixture},
                       {"identity", tol.identity},
                       {"pointwise", tol.pointwise},
                       {"pairing", tol.pairing},
                       {"potential", tol.potential},
                       {"closed", tol.closed},
                       {"period", tol.period},
                       {"stokes", tol.stokes},
                       {"moser", tol.moser},
                       {"moser_idempotence", tol.moser_idempotence},
                       {"sympl_invariance", tol.sympl_invariance},
                       {"ham_c_steps4", tol.ham_c_steps4},
                       {"ham_c_grid2", tol.ham_c_grid2}};
    j["tolerance_scale"] = tol.scale;
    j["flow_steps"] = sc.flow_steps;
    j["moser_steps"] = sc.moser_steps;
    j["suites"] = sc.suites;
    return j;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ScenarioError("cannot read scenario file: " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw ScenarioError(std::string("malformed scenario JSON: ") + e.what());
    }
    try {
        return scenario_from_json(j);
    } catch (const json::exception& e) {
        throw ScenarioError(std::string("malformed scenario: ") + e.what());
    }
}

std::string scenario_digest(const Scenario& sc) {
    const std::string dump = scenario_to_json(sc).dump();
    return digest_bytes(dump.data(), dump.size());
}

} // namespace symplab
