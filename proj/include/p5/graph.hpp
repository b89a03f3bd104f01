#pragma once

#include <string>
#include <utility>
#include <vector>

#include "p5/bitset.hpp"
#include "p5/common.hpp"

namespace p5 {

// Simple undirected graph with dense bitset adjacency rows. Immutable after
// construction; safe to share across threads.
class Graph {
public:
    Graph() = default;
    explicit Graph(int n) : n_(n), adj_(static_cast<std::size_t>(n), VertexSet(n)) {}

    static Graph from_edge_list(int n, const std::vector<std::pair<int, int>>& edges);

    int size() const { return n_; }
    bool adjacent(int u, int v) const { return adj_[static_cast<std::size_t>(u)].test(v); }
    const VertexSet& neighbors(int v) const { return adj_[static_cast<std::size_t>(v)]; }
    int degree(int v) const { return adj_[static_cast<std::size_t>(v)].count(); }

    int edge_count() const {
        int m = 0;
        for (const auto& row : adj_) m += row.count();
        return m / 2;
    }

    std::vector<std::pair<int, int>> edges() const {
        std::vector<std::pair<int, int>> e;
        for (int u = 0; u < n_; ++u)
            neighbors(u).for_each([&](int v) {
                if (u < v) e.emplace_back(u, v);
            });
        return e;
    }

    // Only used by constructors/parsers; graphs are immutable once published.
    void add_edge(int u, int v) {
        adj_[static_cast<std::size_t>(u)].set(v);
        adj_[static_cast<std::size_t>(v)].set(u);
    }

    VertexSet all_vertices() const { return VertexSet::full(n_); }

private:
    int n_ = 0;
    std::vector<VertexSet> adj_;
};

// A materialized induced subgraph plus the map from local ids back to the
// parent's ids. vertex_map is strictly increasing.
struct InducedSubgraph {
    Graph graph;
    std::vector<int> vertex_map;
};

InducedSubgraph induced_subgraph(const Graph& g, const VertexSet& s);

// Connected components as vertex sets, ordered by minimum member.
std::vector<VertexSet> components(const Graph& g);

// Components of g restricted to s (components of the induced subgraph,
// expressed in g's vertex ids).
std::vector<VertexSet> components_within(const Graph& g, const VertexSet& s);

bool is_connected_within(const Graph& g, const VertexSet& s);

// How a vertex v outside S relates to a connected nonempty S.
struct MixedEdgeWitness {
    enum Kind { Complete, Anticomplete, Mixed } kind;
    // Set when kind == Mixed: ab is an edge of G[S], v adjacent to a, not to b.
    int a = -1;
    int b = -1;
};

MixedEdgeWitness mixed_edge_witness(const Graph& g, int v, const VertexSet& s);

// Edge-list text format: first line "n m", then m lines "u v".
Graph read_edge_list(const std::string& text);
std::string write_edge_list(const Graph& g);

}  // namespace p5
