#include "p5/experiment.hpp"

#include <charconv>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <variant>

#include "p5/oracles.hpp"

namespace p5 {

namespace {

std::string csv_escape(const std::string& cell) {
    if (cell.find_first_of(",\"\n") == std::string::npos) return cell;
    std::string out = "\"";
    for (char c : cell) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string format_ms(double ms) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", ms);
    return buf;
}

template <typename T>
std::string opt_cell(const std::optional<T>& value) {
    return value ? std::to_string(*value) : std::string();
}

std::uint64_t parse_u64_value(const std::string& key, const std::string& text) {
    std::uint64_t out = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
    if (ec != std::errc{} || ptr != text.data() + text.size())
        throw InputError("experiment config: bad value for '" + key + "': " + text);
    return out;
}

int parse_int_value(const std::string& key, const std::string& text) {
    int out = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
    if (ec != std::errc{} || ptr != text.data() + text.size())
        throw InputError("experiment config: bad value for '" + key + "': " + text);
    return out;
}

bool parse_bool_value(const std::string& key, const std::string& text) {
    if (text == "true") return true;
    if (text == "false") return false;
    throw InputError("experiment config: bad value for '" + key + "': " + text);
}

std::string trim(const std::string& text) {
    std::size_t a = text.find_first_not_of(" \t\r");
    if (a == std::string::npos) return {};
    std::size_t b = text.find_last_not_of(" \t\r");
    return text.substr(a, b - a + 1);
}

}  // namespace

std::string rows_to_csv(const std::vector<ExperimentRow>& rows, bool emit_runtime) {
    std::string csv = "# p5-experiment-csv v1\n";
    csv += "id,spec,n,edges,omega,chi,colors,budget,rules,runtime_ms,error\n";
    for (const ExperimentRow& row : rows) {
        std::string chi_cell;
        if (row.chi) chi_cell = std::to_string(*row.chi);
        else if (row.chi_skipped) chi_cell = "skipped";

        std::string rules_cell;
        for (const auto& [rule, count] : row.rules) {
            if (!rules_cell.empty()) rules_cell += ';';
            rules_cell += rule + "=" + std::to_string(count);
        }

        csv += std::to_string(row.id);
        csv += ',' + csv_escape(row.spec);
        csv += ',' + opt_cell(row.n);
        csv += ',' + opt_cell(row.edges);
        csv += ',' + opt_cell(row.omega);
        csv += ',' + chi_cell;
        csv += ',' + opt_cell(row.colors);
        csv += ',' + opt_cell(row.budget);
        csv += ',' + rules_cell;
        csv += ',' + (emit_runtime ? format_ms(row.runtime_ms) : std::string());
        csv += ',' + csv_escape(row.error);
        csv += '\n';
    }
    return csv;
}

ExperimentRow measure_graph(int id, const std::string& spec_label, const Graph& g,
                            const ExperimentOptions& options,
                            ColoringCertificate* cert_out) {
    ExperimentRow row;
    row.id = id;
    row.spec = spec_label;
    row.n = g.size();
    row.edges = g.edge_count();

    // Soundness sweep. The pipeline would catch a P5 anyway, but a generator
    // emitting one is a bug worth stopping the batch for.
    if (find_induced_p5(g))
        throw IntegrityError("experiment: generator emitted a graph with an induced P5");

    const auto t0 = std::chrono::steady_clock::now();
    ColorResult colored;
    try {
        colored = color_p5free(g, options.colorer);
    } catch (const OracleBudgetError& e) {
        row.error = std::string("oracle budget: ") + e.what();
        return row;
    }
    if (std::holds_alternative<P5Witness>(colored))
        throw IntegrityError("experiment: witness returned for a swept P5-free graph");
    const ColoringCertificate& cert = std::get<ColoringCertificate>(colored);

    VerifyReport report = verify_certificate(g, cert, options.colorer);
    if (!report.pass)
        throw IntegrityError("experiment: certificate failed verification: " + report.failure);
    const auto t1 = std::chrono::steady_clock::now();
    row.runtime_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();

    row.omega = cert.omega;
    row.colors = cert.num_colors;
    row.budget = cert.budget;
    count_rules(cert.trace, row.rules);

    if (g.size() <= options.chi_gate_n) {
        try {
            OracleLimits limits;
            limits.max_nodes = options.chi_budget;
            row.chi = exact_chromatic(g, limits).chi;
        } catch (const OracleBudgetError&) {
            row.chi_skipped = true;
        }
    } else {
        row.chi_skipped = true;
    }

    if (row.chi &&
        !(*row.chi <= cert.num_colors &&
          static_cast<std::uint64_t>(cert.num_colors) <= cert.budget))
        throw IntegrityError("experiment: row invariant chi <= colors <= budget failed on id " +
                             std::to_string(id));

    if (cert_out) *cert_out = cert;
    return row;
}

ExperimentResult run_experiment(const std::vector<GeneratorSpec>& corpus,
                                const ExperimentOptions& options) {
    ExperimentResult result;
    result.certificates = nlohmann::json::array();

    for (std::size_t i = 0; i < corpus.size(); ++i) {
        const int id = static_cast<int>(i);
        const std::string label = to_spec_string(corpus[i]);

        std::optional<Graph> g;
        try {
            g = generate(corpus[i]);
        } catch (const GenerationError& e) {
            ExperimentRow row;
            row.id = id;
            row.spec = label;
            row.error = std::string("generation: ") + e.what();
            result.rows.push_back(std::move(row));
            continue;
        }
        if (!g) {
            ExperimentRow row;
            row.id = id;
            row.spec = label;
            row.error = "generation: rejection tries exhausted";
            result.rows.push_back(std::move(row));
            continue;
        }

        ColoringCertificate cert;
        ExperimentRow row = measure_graph(id, label, *g, options, &cert);
        if (row.error.empty())
            result.certificates.push_back({{"id", id}, {"certificate", to_json(cert)}});
        result.rows.push_back(std::move(row));
    }

    result.csv = rows_to_csv(result.rows, options.emit_runtime);
    return result;
}

ExperimentConfig parse_experiment_config(const std::string& text) {
    ExperimentConfig config;
    std::size_t start = 0;
    int line_no = 0;
    while (start <= text.size()) {
        std::size_t nl = text.find('\n', start);
        if (nl == std::string::npos) nl = text.size();
        std::string line = text.substr(start, nl - start);
        start = nl + 1;
        ++line_no;

        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        line = trim(line);
        if (line.empty()) continue;

        std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw InputError("experiment config line " + std::to_string(line_no) +
                             ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw InputError("experiment config line " + std::to_string(line_no) +
                             ": expected key = value");

        if (key == "gen") config.corpus.push_back(parse_generator_spec(value));
        else if (key == "chi_gate_n") config.options.chi_gate_n = parse_int_value(key, value);
        else if (key == "chi_budget") config.options.chi_budget = parse_u64_value(key, value);
        else if (key == "emit_runtime") config.options.emit_runtime = parse_bool_value(key, value);
        else if (key == "fast_path") config.options.colorer.fast_path = parse_bool_value(key, value);
        else if (key == "chi_classifier")
            config.options.colorer.chi_classifier = parse_bool_value(key, value);
        else if (key == "omega_base") config.options.colorer.omega_base = parse_int_value(key, value);
        else if (key == "base_n_threshold")
            config.options.colorer.base_n_threshold = parse_int_value(key, value);
        else if (key == "oracle_budget")
            config.options.colorer.limits.max_nodes = parse_u64_value(key, value);
        else if (key == "csv") config.csv_path = value;
        else if (key == "certificates") config.cert_path = value;
        else
            throw InputError("experiment config line " + std::to_string(line_no) +
                             ": unknown key '" + key + "'");
    }
    return config;
}

void apply_env_overrides(ExperimentOptions& options) {
    if (const char* v = std::getenv("P5_ORACLE_BUDGET")) {
        std::uint64_t budget = parse_u64_value("P5_ORACLE_BUDGET", v);
        options.chi_budget = budget;
        options.colorer.limits.max_nodes = budget;
    }
    if (const char* v = std::getenv("P5_CHI_BUDGET"))
        options.chi_budget = parse_u64_value("P5_CHI_BUDGET", v);
}

}  // namespace p5
