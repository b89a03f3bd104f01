#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <string>
#include <vector>

#include "p5/bound.hpp"
#include "p5/experiment.hpp"
#include "p5/oracles.hpp"
#include "support/brute.hpp"

using namespace p5;

namespace {

std::vector<GeneratorSpec> mixed_corpus() {
    std::vector<GeneratorSpec> corpus;
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        GeneratorSpec sub;
        sub.kind = GeneratorKind::Substitution;
        sub.seed = seed;
        sub.depth = 2 + static_cast<int>(seed % 2);
        sub.cap = 48;
        corpus.push_back(sub);

        GeneratorSpec spl;
        spl.kind = GeneratorKind::Split;
        spl.seed = seed;
        spl.k = 2 + static_cast<int>(seed % 3);
        spl.s = 4;
        spl.density = 0.4;
        corpus.push_back(spl);

        GeneratorSpec rej;
        rej.kind = GeneratorKind::Rejection;
        rej.seed = seed;
        rej.n = 9;
        rej.p = 0.25;
        rej.tries = 200;
        corpus.push_back(rej);
    }
    return corpus;
}

int count_char(const std::string& text, char c) {
    int k = 0;
    for (char x : text) k += x == c;
    return k;
}

}  // namespace

TEST_CASE("empty corpus yields a header-only csv") {
    ExperimentResult result = run_experiment({});
    CHECK(result.rows.empty());
    CHECK(result.csv == "# p5-experiment-csv v1\n"
                        "id,spec,n,edges,omega,chi,colors,budget,rules,runtime_ms,error\n");
    CHECK(result.certificates.empty());
}

TEST_CASE("mixed corpus rows satisfy chi <= colors <= budget") {
    ExperimentResult result = run_experiment(mixed_corpus());
    REQUIRE(result.rows.size() == 24);
    int with_chi = 0;
    for (const ExperimentRow& row : result.rows) {
        CHECK(row.error.empty());
        REQUIRE(row.colors.has_value());
        REQUIRE(row.budget.has_value());
        CHECK(static_cast<std::uint64_t>(*row.colors) <= *row.budget);
        REQUIRE(row.n.has_value());
        if (*row.n <= 34) {
            REQUIRE(row.chi.has_value());
            CHECK(*row.chi <= *row.colors);
            ++with_chi;
        }
        CHECK(!row.rules.empty());
    }
    CHECK(with_chi == 24);
    CHECK(result.certificates.size() == 24);
    CHECK(count_char(result.csv, '\n') == 26);
}

TEST_CASE("measure_graph reproduces the blowup tightness rows") {
    const int expected_chi[] = {3, 5, 8};
    BoundFunction bound;
    for (int k = 1; k <= 3; ++k) {
        std::vector<Graph> parts(5, brute::complete(k));
        Graph g = c5_quotient(parts);
        ColoringCertificate cert;
        ExperimentRow row = measure_graph(k, "blowup", g, {}, &cert);
        CHECK(row.error.empty());
        REQUIRE(row.omega.has_value());
        CHECK(*row.omega == 2 * k);
        REQUIRE(row.chi.has_value());
        CHECK(*row.chi == expected_chi[k - 1]);
        CHECK(*row.budget == bound.color_budget(2 * k));
        CHECK(cert.num_colors == *row.colors);
    }
}

TEST_CASE("generation failures become rows, not batch aborts") {
    GeneratorSpec too_big;
    too_big.kind = GeneratorKind::Substitution;
    too_big.seed = 1;
    too_big.depth = 6;
    too_big.cap = 1;

    GeneratorSpec exhausted;
    exhausted.kind = GeneratorKind::Rejection;
    exhausted.seed = 4;
    exhausted.n = 25;
    exhausted.p = 0.5;
    exhausted.tries = 1;

    GeneratorSpec fine;
    fine.kind = GeneratorKind::Split;
    fine.seed = 2;
    fine.k = 3;
    fine.s = 3;
    fine.density = 0.5;

    ExperimentResult result = run_experiment({too_big, exhausted, fine});
    REQUIRE(result.rows.size() == 3);
    CHECK(result.rows[0].error.substr(0, 11) == "generation:");
    CHECK_FALSE(result.rows[0].n.has_value());
    CHECK_FALSE(result.rows[0].colors.has_value());
    CHECK(result.rows[1].error == "generation: rejection tries exhausted");
    CHECK(result.rows[2].error.empty());
    CHECK(result.certificates.size() == 1);
    CHECK(result.certificates[0]["id"] == 2);

    // The vertex-cap message contains a comma, so its cell must be quoted.
    CHECK(result.csv.find("\"generation: gen_substitution: realized") != std::string::npos);
}

TEST_CASE("chi gating and budget exhaustion mark rows skipped") {
    GeneratorSpec wide;
    wide.kind = GeneratorKind::Split;
    wide.seed = 9;
    wide.k = 3;
    wide.s = 40;
    wide.density = 0.2;

    ExperimentResult gated = run_experiment({wide});
    REQUIRE(gated.rows.size() == 1);
    CHECK(gated.rows[0].error.empty());
    CHECK(gated.rows[0].n == 43);
    CHECK_FALSE(gated.rows[0].chi.has_value());
    CHECK(gated.rows[0].chi_skipped);
    CHECK(gated.csv.find(",skipped,") != std::string::npos);

    std::vector<Graph> parts(5, brute::complete(2));
    Graph blowup = c5_quotient(parts);
    ExperimentOptions starved;
    starved.chi_budget = 1;
    ExperimentRow skipped = measure_graph(0, "blowup", blowup, starved);
    CHECK(skipped.error.empty());
    CHECK(skipped.chi_skipped);
    CHECK_FALSE(skipped.chi.has_value());
}

TEST_CASE("two runs produce byte-identical csv and certificates") {
    std::vector<GeneratorSpec> corpus = mixed_corpus();
    ExperimentResult a = run_experiment(corpus);
    ExperimentResult b = run_experiment(corpus);
    CHECK(a.csv == b.csv);
    CHECK(a.certificates.dump() == b.certificates.dump());
}

TEST_CASE("emit_runtime only changes the runtime column") {
    GeneratorSpec spec;
    spec.kind = GeneratorKind::Split;
    spec.seed = 3;
    spec.k = 4;
    spec.s = 5;
    spec.density = 0.5;

    ExperimentOptions timed;
    timed.emit_runtime = true;
    ExperimentResult with = run_experiment({spec}, timed);
    ExperimentResult without = run_experiment({spec});

    CHECK(without.csv.find(",,\n") != std::string::npos);
    CHECK(with.csv != without.csv);
    CHECK(rows_to_csv(with.rows, false) == without.csv);
}

TEST_CASE("config files parse into options and corpus") {
    const std::string text =
        "# corpus config\n"
        "chi_gate_n = 20\n"
        "chi_budget = 500000\n"
        "emit_runtime = true\n"
        "fast_path = false\n"
        "chi_classifier = true\n"
        "omega_base = 4\n"
        "base_n_threshold = 12\n"
        "oracle_budget = 250000\n"
        "csv = out/rows.csv\n"
        "certificates = out/certs.json\n"
        "\n"
        "gen = substitution,seed=1,depth=3,cap=60   # first entry\n"
        "gen = split,seed=2,k=4,s=6,density=0.4\n";
    ExperimentConfig config = parse_experiment_config(text);
    CHECK(config.options.chi_gate_n == 20);
    CHECK(config.options.chi_budget == 500000);
    CHECK(config.options.emit_runtime);
    CHECK_FALSE(config.options.colorer.fast_path);
    CHECK(config.options.colorer.chi_classifier);
    CHECK(config.options.colorer.base_n_threshold == 12);
    CHECK(config.options.colorer.limits.max_nodes == 250000);
    CHECK(config.csv_path == "out/rows.csv");
    CHECK(config.cert_path == "out/certs.json");
    REQUIRE(config.corpus.size() == 2);
    CHECK(config.corpus[0].kind == GeneratorKind::Substitution);
    CHECK(to_spec_string(config.corpus[1]) == "split,seed=2,k=4,s=6,density=0.4");

    CHECK_THROWS_AS(parse_experiment_config("chi_gate_n 20\n"), InputError);
    CHECK_THROWS_AS(parse_experiment_config("mystery = 3\n"), InputError);
    CHECK_THROWS_AS(parse_experiment_config("emit_runtime = yes\n"), InputError);
    CHECK_THROWS_AS(parse_experiment_config("gen = blowup,seed=1\n"), InputError);
    CHECK_THROWS_AS(parse_experiment_config("csv =\n"), InputError);
}

TEST_CASE("environment variables override oracle budgets") {
    ExperimentOptions options;
    setenv("P5_ORACLE_BUDGET", "1234", 1);
    apply_env_overrides(options);
    CHECK(options.chi_budget == 1234);
    CHECK(options.colorer.limits.max_nodes == 1234);

    setenv("P5_CHI_BUDGET", "99", 1);
    apply_env_overrides(options);
    CHECK(options.chi_budget == 99);
    CHECK(options.colorer.limits.max_nodes == 1234);

    setenv("P5_CHI_BUDGET", "fast", 1);
    CHECK_THROWS_AS(apply_env_overrides(options), InputError);

    unsetenv("P5_ORACLE_BUDGET");
    unsetenv("P5_CHI_BUDGET");
}
