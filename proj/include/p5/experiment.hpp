#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "p5/colorer.hpp"
#include "p5/generators.hpp"

namespace p5 {

struct ExperimentOptions {
    int chi_gate_n = 34;                     // exact chi only at or below this size
    std::uint64_t chi_budget = 10'000'000;   // node budget for the chi oracle
    bool emit_runtime = false;               // runtime cells stay empty by default
    ColorerOptions colorer;
};

// One corpus graph. A nonempty error means the row stopped at that stage and
// the optional fields past it are absent. chi is absent either way when the
// exact oracle was gated or ran out of budget; chi_skipped tells those apart
// from rows that never reached the oracle.
struct ExperimentRow {
    int id = 0;
    std::string spec;
    std::optional<int> n;
    std::optional<int> edges;
    std::optional<int> omega;
    std::optional<int> chi;
    bool chi_skipped = false;
    std::optional<std::int64_t> colors;
    std::optional<std::uint64_t> budget;
    std::map<std::string, int> rules;
    double runtime_ms = 0.0;
    std::string error;
};

struct ExperimentResult {
    std::vector<ExperimentRow> rows;
    std::string csv;
    nlohmann::json certificates;  // array of {id, certificate}, successful rows only
};

// Colors every corpus graph, verifies each certificate, and exact-colors the
// gated ones. Oracle budget exhaustion and generation failures land in the
// row's error field; anything that contradicts the coloring contract itself
// (a witness on swept input, a failed verify, chi above the algorithm's
// count) throws IntegrityError.
ExperimentResult run_experiment(const std::vector<GeneratorSpec>& corpus,
                                const ExperimentOptions& options = {});

// The per-graph measurement behind run_experiment, usable on graphs built by
// hand. cert_out, when given, receives the certificate on success.
ExperimentRow measure_graph(int id, const std::string& spec_label, const Graph& g,
                            const ExperimentOptions& options,
                            ColoringCertificate* cert_out = nullptr);

std::string rows_to_csv(const std::vector<ExperimentRow>& rows, bool emit_runtime);

struct ExperimentConfig {
    ExperimentOptions options;
    std::vector<GeneratorSpec> corpus;
    std::string csv_path;   // empty: stdout
    std::string cert_path;  // empty: not written
};

// key = value lines, '#' comments, one "gen = <spec>" line per corpus entry.
ExperimentConfig parse_experiment_config(const std::string& text);

// P5_ORACLE_BUDGET caps both the chi oracle and the colorer's internal
// oracles; P5_CHI_BUDGET caps just the former.
void apply_env_overrides(ExperimentOptions& options);

}  // namespace p5
