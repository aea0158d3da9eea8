#ifndef SYMPLAB_SUITES_HPP
#define SYMPLAB_SUITES_HPP

#include <json.hpp>

#include <string>
#include <vector>

#include "symplab/scenario.hpp"

namespace symplab {

inline constexpr const char* kVersion = "0.1.0";

/** One verified statement. Every record cites exactly one check tag from the
 * fixed enumeration used across the suites. Records with asserted == false
 * are informational probes and never gate the aggregate outcome. */
struct SuiteRecord {
    std::string tag;
    std::string inputs; // digest of the record's input data
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass = true;
    bool asserted = true;
    std::string note;
};

struct SuiteReport {
    std::string suite;
    std::vector<SuiteRecord> records;
    bool pass = true; // conjunction over asserted records
};

struct RunReport {
    std::string scenario_digest;
    uint64_t seed = 0;
    int nx = 0, ny = 0;
    int threads = 1;
    std::string version = kVersion;
    std::vector<SuiteReport> suites;
    bool aggregate_pass = true;
};

/** Runs one named suite. Numerical errors inside a suite are captured as
 * failed records rather than propagated. */
SuiteReport run_suite(const Scenario& sc, const std::string& name);

/** Runs every suite listed in the scenario, in canonical order. Reports are
 * deterministic (bit-stable) for a fixed seed. */
RunReport run_scenario(const Scenario& sc);

nlohmann::json report_to_json(const RunReport& r);
void emit_report(const RunReport& r, const std::string& path);

} // namespace symplab

#endif
