#ifndef SYMPLAB_SCENARIO_HPP
#define SYMPLAB_SCENARIO_HPP

#include <json.hpp>

#include <memory>
#include <string>
#include <vector>

#include "symplab/ambient.hpp"
#include "symplab/embedding.hpp"

namespace symplab {

/** Thresholds for the verification suites. Every value is pinned here; a
 * scenario may override single entries or rescale all of them. */
struct Tolerances {
    double fixture = 1e-10;          // fixture values known in closed form
    double identity = 1e-12;         // machine-level identities
    double pointwise = 1e-10;        // pointwise cancellation residuals
    double pairing = 1e-8;           // integrated pairing residuals
    double potential = 1e-8;         // recovered potential match
    double closed = 1e-8;            // classification: closedness threshold
    double period = 1e-8;            // classification: exactness threshold
    double stokes = 1e-10;           // bracket integral
    double moser = 1e-4;             // moser residual and oracle agreement
    double moser_idempotence = 1e-6;
    double sympl_invariance = 1e-6;
    double ham_c_steps4 = 50.0;      // C  in C steps^-4 + C' N^-2
    double ham_c_grid2 = 10.0;       // C'
    double scale = 1.0;              // global multiplier

    Tolerances scaled() const;
};

struct EmbeddingSpec {
    enum class Family { flat, sheared, file };
    Family family = Family::flat;
    double amplitude = 0.0;  // sheared
    std::string path;        // file
};

struct FieldGenSpec {
    int bandwidth = 3;         // surface Fourier data
    int ambient_bandwidth = 2; // ambient Hamiltonians
    int ambient_terms = 8;
    double amplitude = 1.0;
    uint64_t seed = 2026;
};

/** Complete description of a laboratory run: ambient model, grid, area form,
 * embedding, random-field generation, tolerances and the suite list. */
struct Scenario {
    int n = 2;
    bool omega_standard = true;
    Eigen::MatrixXd omega; // used when !omega_standard
    std::vector<FourierScalar> eta;

    int nx = 64, ny = 64;

    double sigma_constant = 1.0;
    FourierScalar sigma_terms{2};

    EmbeddingSpec embedding;
    FieldGenSpec fields;
    Tolerances tolerances;

    int flow_steps = 200;
    int moser_steps = 50;

    std::vector<std::string> suites;

    // --- realization ---
    TorusGrid make_grid() const { return TorusGrid(nx, ny); }
    std::shared_ptr<const AmbientModel> make_model() const;
    AreaForm make_sigma(TorusGrid g) const;
    /** Analytic density value at a surface point. */
    double sigma_value(double x, double y) const;
    Embedding make_embedding(std::shared_ptr<const AmbientModel> model, TorusGrid g) const;
};

/** All valid suite names, in canonical execution order. */
const std::vector<std::string>& all_suite_names();

Scenario scenario_from_json(const nlohmann::json& j);
nlohmann::json scenario_to_json(const Scenario& sc);

/** Loads and validates a scenario file; unknown keys are rejected. */
Scenario load_scenario(const std::string& path);

/** Digest of the canonical serialization. */
std::string scenario_digest(const Scenario& sc);

} // namespace symplab

#endif
