#include "p5/graph.hpp"

#include <sstream>

namespace p5 {

Graph Graph::from_edge_list(int n, const std::vector<std::pair<int, int>>& edges) {
    if (n < 0) throw InputError("vertex count must be non-negative");
    Graph g(n);
    for (const auto& [u, v] : edges) {
        if (u == v)
            throw InputError("self-loop (" + std::to_string(u) + "," + std::to_string(v) +
                             ") rejected");
        if (u < 0 || v < 0 || u >= n || v >= n)
            throw InputError("edge (" + std::to_string(u) + "," + std::to_string(v) +
                             ") out of range for n=" + std::to_string(n));
        g.add_edge(u, v);
    }
    return g;
}

InducedSubgraph induced_subgraph(const Graph& g, const VertexSet& s) {
    InducedSubgraph sub;
    sub.vertex_map = s.to_vector();
    const int k = static_cast<int>(sub.vertex_map.size());
    sub.graph = Graph(k);
    for (int i = 0; i < k; ++i) {
        const VertexSet& row = g.neighbors(sub.vertex_map[static_cast<std::size_t>(i)]);
        for (int j = i + 1; j < k; ++j)
            if (row.test(sub.vertex_map[static_cast<std::size_t>(j)])) sub.graph.add_edge(i, j);
    }
    return sub;
}

std::vector<VertexSet> components_within(const Graph& g, const VertexSet& s) {
    std::vector<VertexSet> comps;
    VertexSet remaining = s;
    for (int v = remaining.first(); v != -1; v = remaining.first()) {
        VertexSet comp(g.size());
        VertexSet frontier(g.size());
        frontier.set(v);
        while (!frontier.empty()) {
            comp |= frontier;
            VertexSet next(g.size());
            frontier.for_each([&](int u) { next |= g.neighbors(u); });
            next &= remaining;
            next -= comp;
            frontier = next;
        }
        comps.push_back(comp);
        remaining -= comp;
    }
    return comps;
}

std::vector<VertexSet> components(const Graph& g) {
    return components_within(g, g.all_vertices());
}

bool is_connected_within(const Graph& g, const VertexSet& s) {
    if (s.empty()) return true;
    return components_within(g, s).size() == 1;
}

MixedEdgeWitness mixed_edge_witness(const Graph& g, int v, const VertexSet& s) {
    if (s.empty()) throw UsageError("mixed_edge_witness: S is empty");
    if (s.test(v)) throw UsageError("mixed_edge_witness: v is a member of S");
    if (!is_connected_within(g, s)) throw UsageError("mixed_edge_witness: G[S] is disconnected");

    VertexSet in = g.neighbors(v) & s;
    if (in.empty()) return {MixedEdgeWitness::Anticomplete};
    if (s.is_subset_of(g.neighbors(v))) return {MixedEdgeWitness::Complete};

    // G[S] is connected and both sides of the cut are nonempty, so some edge
    // of G[S] crosses from a neighbour of v to a non-neighbour.
    VertexSet out = s - g.neighbors(v);
    int a = -1, b = -1;
    in.for_each([&](int u) {
        if (a != -1) return;
        VertexSet x = g.neighbors(u) & out;
        int w = x.first();
        if (w != -1) {
            a = u;
            b = w;
        }
    });
    if (a == -1) throw IntegrityError("mixed_edge_witness: no crossing edge in connected G[S]");
    return {MixedEdgeWitness::Mixed, a, b};
}

Graph read_edge_list(const std::string& text) {
    std::istringstream in(text);
    long long n = -1, m = -1;
    if (!(in >> n >> m)) throw InputError("edge list: expected header line \"n m\"");
    if (n < 0 || m < 0) throw InputError("edge list: negative count in header");
    std::vector<std::pair<int, int>> edges;
    edges.reserve(static_cast<std::size_t>(m));
    for (long long i = 0; i < m; ++i) {
        long long u, v;
        if (!(in >> u >> v))
            throw InputError("edge list: expected " + std::to_string(m) + " edges, got " +
                             std::to_string(i));
        edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
    }
    return Graph::from_edge_list(static_cast<int>(n), edges);
}

std::string write_edge_list(const Graph& g) {
    std::ostringstream out;
    auto edges = g.edges();
    out << g.size() << ' ' << edges.size() << '\n';
    for (const auto& [u, v] : edges) out << u << ' ' << v << '\n';
    return out.str();
}

}  // namespace p5
