#include "p5/generators.hpp"

#include <charconv>
#include <cstdlib>
#include <utility>

#include "p5/oracles.hpp"

namespace p5 {

namespace {

std::string kind_name(GeneratorKind kind) {
    switch (kind) {
        case GeneratorKind::Substitution: return "substitution";
        case GeneratorKind::Split: return "split";
        case GeneratorKind::Rejection: return "rejection";
    }
    throw UsageError("generator: unknown kind");
}

std::uint64_t parse_u64_field(const std::string& key, const std::string& text) {
    std::uint64_t out = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
    if (ec != std::errc{} || ptr != text.data() + text.size())
        throw InputError("generator spec: bad value for '" + key + "': " + text);
    return out;
}

int parse_int_field(const std::string& key, const std::string& text) {
    int out = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
    if (ec != std::errc{} || ptr != text.data() + text.size())
        throw InputError("generator spec: bad value for '" + key + "': " + text);
    return out;
}

double parse_double_field(const std::string& key, const std::string& text) {
    // std::from_chars for double is missing on some libstdc++ baselines; strtod
    // with a full-consumption check matches its behavior closely enough here.
    if (text.empty()) throw InputError("generator spec: bad value for '" + key + "'");
    const char* begin = text.c_str();
    char* end = nullptr;
    double out = std::strtod(begin, &end);
    if (end != begin + text.size())
        throw InputError("generator spec: bad value for '" + key + "': " + text);
    return out;
}

std::string format_double(double x) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    if (ec != std::errc{}) throw UsageError("generator spec: unformattable density");
    return std::string(buf, ptr);
}

std::vector<int> part_offsets(const std::vector<Graph>& parts, int& total) {
    std::vector<int> off(parts.size());
    total = 0;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        off[i] = total;
        total += parts[i].size();
    }
    return off;
}

void copy_part_edges(const Graph& part, int offset, Graph& out) {
    for (auto [u, v] : part.edges()) out.add_edge(offset + u, offset + v);
}

void join_parts(const Graph& a, int off_a, const Graph& b, int off_b, Graph& out) {
    for (int u = 0; u < a.size(); ++u)
        for (int v = 0; v < b.size(); ++v) out.add_edge(off_a + u, off_b + v);
}

struct Built {
    Graph g;
    int omega = 0;
};

Built build_node(Rng& rng, int depth, int top_depth) {
    const bool forced_leaf = depth <= 0;
    // Interior nodes below the root may still bottom out early; this keeps the
    // size distribution spread out instead of always hitting the cap.
    if (forced_leaf || (depth < top_depth && rng.chance(0.25)))
        return {Graph(1), 1};

    const std::uint64_t shape = rng.below(5);
    std::size_t arity = shape == 4 ? 5 : 2 + rng.below(2);
    std::vector<Graph> children;
    std::vector<int> omegas;
    children.reserve(arity);
    omegas.reserve(arity);
    for (std::size_t i = 0; i < arity; ++i) {
        Built child = build_node(rng, depth - 1, top_depth);
        children.push_back(std::move(child.g));
        omegas.push_back(child.omega);
    }

    if (shape <= 1) {
        int omega = 0;
        for (int w : omegas) omega = std::max(omega, w);
        return {disjoint_union(children), omega};
    }
    if (shape <= 3) {
        int omega = 0;
        for (int w : omegas) omega += w;
        return {join_all(children), omega};
    }
    int omega = 0;
    for (std::size_t i = 0; i < 5; ++i)
        omega = std::max(omega, omegas[i] + omegas[(i + 1) % 5]);
    return {c5_quotient(children), omega};
}

}  // namespace

GeneratorSpec parse_generator_spec(const std::string& text) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t comma = text.find(',', start);
        if (comma == std::string::npos) comma = text.size();
        fields.push_back(text.substr(start, comma - start));
        start = comma + 1;
    }
    if (fields.empty() || fields[0].empty())
        throw InputError("generator spec: missing kind: " + text);

    GeneratorSpec spec;
    if (fields[0] == "substitution") spec.kind = GeneratorKind::Substitution;
    else if (fields[0] == "split") spec.kind = GeneratorKind::Split;
    else if (fields[0] == "rejection") spec.kind = GeneratorKind::Rejection;
    else throw InputError("generator spec: unknown kind '" + fields[0] + "'");

    for (std::size_t i = 1; i < fields.size(); ++i) {
        const std::string& field = fields[i];
        std::size_t eq = field.find('=');
        if (eq == std::string::npos || eq == 0)
            throw InputError("generator spec: expected key=value, got '" + field + "'");
        const std::string key = field.substr(0, eq);
        const std::string value = field.substr(eq + 1);

        if (key == "seed") {
            spec.seed = parse_u64_field(key, value);
            continue;
        }
        switch (spec.kind) {
            case GeneratorKind::Substitution:
                if (key == "depth") spec.depth = parse_int_field(key, value);
                else if (key == "cap") spec.cap = parse_int_field(key, value);
                else if (key == "omega_cap") spec.omega_cap = parse_int_field(key, value);
                else throw InputError("generator spec: key '" + key +
                                      "' not valid for kind 'substitution'");
                break;
            case GeneratorKind::Split:
                if (key == "k") spec.k = parse_int_field(key, value);
                else if (key == "s") spec.s = parse_int_field(key, value);
                else if (key == "density") spec.density = parse_double_field(key, value);
                else throw InputError("generator spec: key '" + key +
                                      "' not valid for kind 'split'");
                break;
            case GeneratorKind::Rejection:
                if (key == "n") spec.n = parse_int_field(key, value);
                else if (key == "p") spec.p = parse_double_field(key, value);
                else if (key == "tries") spec.tries = parse_int_field(key, value);
                else throw InputError("generator spec: key '" + key +
                                      "' not valid for kind 'rejection'");
                break;
        }
    }
    return spec;
}

std::string to_spec_string(const GeneratorSpec& spec) {
    std::string out = kind_name(spec.kind) + ",seed=" + std::to_string(spec.seed);
    switch (spec.kind) {
        case GeneratorKind::Substitution:
            out += ",depth=" + std::to_string(spec.depth);
            out += ",cap=" + std::to_string(spec.cap);
            if (spec.omega_cap > 0) out += ",omega_cap=" + std::to_string(spec.omega_cap);
            break;
        case GeneratorKind::Split:
            out += ",k=" + std::to_string(spec.k);
            out += ",s=" + std::to_string(spec.s);
            out += ",density=" + format_double(spec.density);
            break;
        case GeneratorKind::Rejection:
            out += ",n=" + std::to_string(spec.n);
            out += ",p=" + format_double(spec.p);
            out += ",tries=" + std::to_string(spec.tries);
            break;
    }
    return out;
}

Graph disjoint_union(const std::vector<Graph>& parts) {
    int total = 0;
    std::vector<int> off = part_offsets(parts, total);
    Graph out(total);
    for (std::size_t i = 0; i < parts.size(); ++i) copy_part_edges(parts[i], off[i], out);
    return out;
}

Graph join_all(const std::vector<Graph>& parts) {
    int total = 0;
    std::vector<int> off = part_offsets(parts, total);
    Graph out(total);
    for (std::size_t i = 0; i < parts.size(); ++i) {
        copy_part_edges(parts[i], off[i], out);
        for (std::size_t j = i + 1; j < parts.size(); ++j)
            join_parts(parts[i], off[i], parts[j], off[j], out);
    }
    return out;
}

Graph c5_quotient(const std::vector<Graph>& parts) {
    if (parts.size() != 5) throw UsageError("c5_quotient: exactly five parts required");
    int total = 0;
    std::vector<int> off = part_offsets(parts, total);
    Graph out(total);
    for (std::size_t i = 0; i < 5; ++i) {
        copy_part_edges(parts[i], off[i], out);
        std::size_t j = (i + 1) % 5;
        join_parts(parts[i], off[i], parts[j], off[j], out);
    }
    return out;
}

GeneratedGraph gen_substitution(const GeneratorSpec& spec) {
    if (spec.depth < 0) throw UsageError("gen_substitution: depth must be >= 0");
    if (spec.cap < 1) throw UsageError("gen_substitution: cap must be >= 1");
    Rng rng(spec.seed);
    Built built = build_node(rng, spec.depth, spec.depth);
    if (built.g.size() > spec.cap)
        throw GenerationError("gen_substitution: realized " + std::to_string(built.g.size()) +
                              " vertices, cap " + std::to_string(spec.cap));
    if (spec.omega_cap > 0 && built.omega > spec.omega_cap)
        throw GenerationError("gen_substitution: realized omega " + std::to_string(built.omega) +
                              ", cap " + std::to_string(spec.omega_cap));
    return {std::move(built.g), built.omega};
}

GeneratedGraph gen_split(const GeneratorSpec& spec) {
    if (spec.k < 0 || spec.s < 0) throw UsageError("gen_split: sizes must be >= 0");
    if (!(spec.density >= 0.0 && spec.density <= 1.0))
        throw UsageError("gen_split: density must be in [0, 1]");
    Rng rng(spec.seed);
    const int n = spec.k + spec.s;
    Graph g(n);
    for (int u = 0; u < spec.k; ++u)
        for (int v = u + 1; v < spec.k; ++v) g.add_edge(u, v);
    bool some_stable_complete = false;
    for (int u = spec.k; u < n; ++u) {
        int hits = 0;
        for (int v = 0; v < spec.k; ++v)
            if (rng.chance(spec.density)) {
                g.add_edge(u, v);
                ++hits;
            }
        if (hits == spec.k) some_stable_complete = true;
    }
    int omega;
    if (spec.k == 0) omega = spec.s > 0 ? 1 : 0;
    else omega = spec.k + (spec.s > 0 && some_stable_complete ? 1 : 0);
    return {std::move(g), omega};
}

std::optional<Graph> gen_rejection(const GeneratorSpec& spec, std::vector<Graph>* rejects) {
    if (spec.n < 0) throw UsageError("gen_rejection: n must be >= 0");
    if (!(spec.p >= 0.0 && spec.p <= 1.0))
        throw UsageError("gen_rejection: p must be in [0, 1]");
    if (spec.tries < 1) throw UsageError("gen_rejection: tries must be >= 1");
    Rng rng(spec.seed);
    for (int t = 0; t < spec.tries; ++t) {
        Graph g(spec.n);
        for (int u = 0; u < spec.n; ++u)
            for (int v = u + 1; v < spec.n; ++v)
                if (rng.chance(spec.p)) g.add_edge(u, v);
        if (!find_induced_p5(g)) return g;
        if (rejects) rejects->push_back(std::move(g));
    }
    return std::nullopt;
}

std::optional<Graph> generate(const GeneratorSpec& spec) {
    switch (spec.kind) {
        case GeneratorKind::Substitution: return gen_substitution(spec).graph;
        case GeneratorKind::Split: return gen_split(spec).graph;
        case GeneratorKind::Rejection: return gen_rejection(spec);
    }
    throw UsageError("generate: unknown kind");
}

}  // namespace p5
