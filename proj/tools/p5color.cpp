#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "p5/bound.hpp"
#include "p5/colorer.hpp"
#include "p5/experiment.hpp"
#include "p5/generators.hpp"
#include "p5/graph6.hpp"
#include "p5/oracles.hpp"

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw p5::InputError("cannot read file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

p5::Graph load_graph(const std::string& path) { return p5::read_graph_auto(slurp(path)); }

void write_or_print(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw p5::InputError("cannot write file: " + path);
    out << text;
}

nlohmann::json witness_to_json(const p5::P5Witness& w) {
    return nlohmann::json::array({w.v[0], w.v[1], w.v[2], w.v[3], w.v[4]});
}

void print_json(const nlohmann::json& j) { std::cout << j.dump(2) << "\n"; }

int cmd_check_p5(const std::string& file) {
    p5::Graph g = load_graph(file);
    if (auto w = p5::find_induced_p5(g)) {
        print_json({{"p5_free", false}, {"witness", witness_to_json(*w)}});
        return 1;
    }
    print_json({{"p5_free", true}, {"n", g.size()}});
    return 0;
}

int cmd_color(const std::string& file, const std::string& out_path,
              const p5::ColorerOptions& opts) {
    p5::Graph g = load_graph(file);
    p5::ColorResult result = p5::color_p5free(g, opts);
    if (const auto* w = std::get_if<p5::P5Witness>(&result)) {
        print_json({{"colored", false}, {"witness", witness_to_json(*w)}});
        return 1;
    }
    const auto& cert = std::get<p5::ColoringCertificate>(result);
    write_or_print(out_path, p5::to_json(cert).dump(2) + "\n");
    return 0;
}

int cmd_verify(const std::string& graph_file, const std::string& cert_file) {
    p5::Graph g = load_graph(graph_file);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(slurp(cert_file));
    } catch (const nlohmann::json::exception& e) {
        throw p5::InputError("certificate is not valid JSON: " + std::string(e.what()));
    }
    p5::ColoringCertificate cert = p5::certificate_from_json(j);
    p5::VerifyReport report = p5::verify_certificate(g, cert);
    print_json({{"pass", report.pass}, {"failure", report.failure}});
    return report.pass ? 0 : 1;
}

int cmd_oracle(const std::string& file, bool chromatic, bool clique, std::uint64_t budget) {
    if (chromatic == clique)
        throw p5::InputError("oracle: pass exactly one of --chromatic, --clique");
    p5::Graph g = load_graph(file);
    p5::OracleLimits limits;
    limits.max_nodes = budget;
    if (chromatic) {
        p5::ChromaticResult r = p5::exact_chromatic(g, limits);
        print_json({{"chi", r.chi}});
        return 0;
    }
    p5::Clique c = p5::max_clique(g, limits);
    std::vector<int> members;
    c.vertices.for_each([&](int v) { members.push_back(v); });
    print_json({{"omega", c.size}, {"clique", members}});
    return 0;
}

int cmd_bound_eval(int w) {
    p5::BoundFunction bound;
    p5::FValue f = bound.f_value(w);
    print_json({{"w", w},
                {"f", f.decimal},
                {"f_lo", f.lo},
                {"f_hi", f.hi},
                {"color_budget", bound.color_budget_string(w)}});
    return 0;
}

int cmd_bound_sweep(int w_max) {
    p5::BoundFunction bound;
    p5::HypothesesReport report = bound.check_binding_hypotheses(bound.omega_base(), w_max);
    print_json({{"omega_base", report.omega_base},
                {"w_max", report.w_max},
                {"monotone", report.monotone},
                {"recursion_holds", report.recursion_holds},
                {"base_case_by_citation", report.base_case_by_citation},
                {"failed_w", report.failed_w},
                {"min_slack", report.min_slack},
                {"min_slack_w", report.min_slack_w},
                {"pass", report.pass()}});
    return report.pass() ? 0 : 1;
}

int cmd_gen(const std::string& spec_text) {
    p5::GeneratorSpec spec = p5::parse_generator_spec(spec_text);
    std::optional<p5::Graph> g = p5::generate(spec);
    if (!g) {
        std::cerr << "rejection sampler exhausted its tries\n";
        return 1;
    }
    std::cout << p5::graph6_encode(*g) << "\n";
    return 0;
}

int cmd_experiment(const std::string& config_file) {
    p5::ExperimentConfig config = p5::parse_experiment_config(slurp(config_file));
    p5::apply_env_overrides(config.options);
    p5::ExperimentResult result = p5::run_experiment(config.corpus, config.options);
    write_or_print(config.csv_path, result.csv);
    if (!config.cert_path.empty())
        write_or_print(config.cert_path, result.certificates.dump() + "\n");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"certified coloring of P5-free graphs"};
    app.require_subcommand(1);
    int rc = 0;

    std::string check_file;
    auto* check = app.add_subcommand("check-p5", "test for an induced P5, print a witness if found");
    check->add_option("file", check_file, "graph file, graph6 or edge list")->required();
    check->callback([&] { rc = cmd_check_p5(check_file); });

    std::string color_file, color_out;
    p5::ColorerOptions color_opts;
    bool no_fast_path = false;
    auto* color = app.add_subcommand("color", "produce a certified coloring or a P5 witness");
    color->add_option("file", color_file, "graph file, graph6 or edge list")->required();
    color->add_option("-o,--output", color_out, "write the certificate here instead of stdout");
    color->add_flag("--no-fast-path", no_fast_path, "skip the greedy shortcut, always decompose");
    color->add_flag("--chi-classifier", color_opts.chi_classifier,
                    "classify pieces by exact chromatic number where feasible");
    color->add_option("--base-threshold", color_opts.base_n_threshold,
                      "exact-color scopes at or below this many vertices");
    color->callback([&] {
        color_opts.fast_path = !no_fast_path;
        rc = cmd_color(color_file, color_out, color_opts);
    });

    std::string verify_graph, verify_cert;
    auto* verify = app.add_subcommand("verify", "check a certificate against its graph");
    verify->add_option("graph", verify_graph, "graph file")->required();
    verify->add_option("cert", verify_cert, "certificate JSON file")->required();
    verify->callback([&] { rc = cmd_verify(verify_graph, verify_cert); });

    std::string oracle_file;
    bool oracle_chromatic = false, oracle_clique = false;
    std::uint64_t oracle_budget = p5::OracleLimits{}.max_nodes;
    auto* oracle = app.add_subcommand("oracle", "run an exact oracle");
    oracle->add_option("file", oracle_file, "graph file")->required();
    auto* flag_chromatic = oracle->add_flag("--chromatic", oracle_chromatic, "exact chromatic number");
    oracle->add_flag("--clique", oracle_clique, "maximum clique")->excludes(flag_chromatic);
    oracle->add_option("--budget", oracle_budget, "search node budget");
    oracle->callback([&] { rc = cmd_oracle(oracle_file, oracle_chromatic, oracle_clique, oracle_budget); });

    int bound_eval = -1, bound_sweep = -1;
    auto* bound = app.add_subcommand("bound", "evaluate the bound function or sweep its hypotheses");
    auto* opt_eval = bound->add_option("--eval", bound_eval, "print f(w) and the color budget");
    bound->add_option("--sweep", bound_sweep, "verify monotonicity and the recursion up to w_max")
        ->excludes(opt_eval);
    bound->callback([&] {
        if (bound_eval < 0 && bound_sweep < 0)
            throw p5::InputError("bound: pass one of --eval, --sweep");
        rc = bound_eval >= 0 ? cmd_bound_eval(bound_eval) : cmd_bound_sweep(bound_sweep);
    });

    std::string gen_spec;
    auto* gen = app.add_subcommand("gen", "generate a P5-free graph, graph6 to stdout");
    gen->add_option("spec", gen_spec, "e.g. substitution,seed=7,depth=3,cap=60")->required();
    gen->callback([&] { rc = cmd_gen(gen_spec); });

    std::string experiment_config;
    auto* experiment = app.add_subcommand("experiment", "run a corpus described by a config file");
    experiment->add_option("config", experiment_config, "key = value config file")->required();
    experiment->callback([&] { rc = cmd_experiment(experiment_config); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const p5::GenerationError& e) {
        std::cerr << "generation failed: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return rc;
}
