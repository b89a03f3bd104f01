#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "p5/graph.hpp"

namespace p5 {

struct OracleLimits {
    std::uint64_t max_nodes = 10'000'000;
};

struct Clique {
    VertexSet vertices;
    int size = 0;
};

struct Coloring {
    std::vector<int> color_of;  // vertex -> 0-based color id
    int num_colors = 0;         // 1 + max color id used; 0 for the empty graph

    bool proper(const Graph& g) const {
        for (int u = 0; u < g.size(); ++u) {
            bool ok = true;
            g.neighbors(u).for_each([&](int v) {
                if (color_of[static_cast<std::size_t>(u)] == color_of[static_cast<std::size_t>(v)])
                    ok = false;
            });
            if (!ok) return false;
        }
        return true;
    }
};

// Five vertices inducing exactly the path v1-v2-v3-v4-v5.
struct P5Witness {
    int v[5];

    bool validate(const Graph& g) const;
};

// Exact maximum clique: branch and bound with greedy-coloring upper bounds.
// Deterministic. Throws OracleBudgetError past limits.max_nodes search nodes.
Clique max_clique(const Graph& g, const OracleLimits& limits = {});

// None iff g is P5-free; otherwise a valid witness. Exact.
std::optional<P5Witness> find_induced_p5(const Graph& g);

// Exact k-colorability: a proper coloring with <= k colors, or nullopt when
// none exists. Clique-seeded DSATUR branch and bound.
std::optional<Coloring> color_at_most(const Graph& g, int k, const OracleLimits& limits = {});

struct ChromaticResult {
    int chi = 0;
    Coloring coloring;
};

// Exact chromatic number with witnessing coloring: iterated color_at_most
// between the clique lower bound and the DSATUR upper bound.
ChromaticResult exact_chromatic(const Graph& g, const OracleLimits& limits = {});

// Saturation-degree-first greedy, ties broken by vertex id. Deterministic.
Coloring dsatur(const Graph& g);

}  // namespace p5
