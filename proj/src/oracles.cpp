#include "p5/oracles.hpp"

#include <algorithm>
#include <string>

#include "p5/common.hpp"

namespace p5 {

bool P5Witness::validate(const Graph& g) const {
    for (int i = 0; i < 5; ++i) {
        if (v[i] < 0 || v[i] >= g.size()) return false;
        for (int j = i + 1; j < 5; ++j) {
            if (v[i] == v[j]) return false;
            bool want = (j == i + 1);
            if (g.adjacent(v[i], v[j]) != want) return false;
        }
    }
    return true;
}

namespace {

struct CliqueSearch {
    const Graph& g;
    std::uint64_t budget;
    std::uint64_t nodes = 0;
    std::vector<int> cur;
    std::vector<int> best;

    explicit CliqueSearch(const Graph& graph, std::uint64_t b) : g(graph), budget(b) {}

    // Tomita-style: greedy-color the candidate set, branch in descending
    // color order, prune when |cur| + color(v) cannot beat |best|.
    void expand(const VertexSet& cand) {
        if (++nodes > budget)
            throw OracleBudgetError("max_clique: node budget of " + std::to_string(budget) +
                                    " exhausted");
        if (cand.empty()) {
            if (cur.size() > best.size()) best = cur;
            return;
        }
        std::vector<int> order;
        std::vector<int> color;
        order.reserve(static_cast<std::size_t>(cand.count()));
        color.reserve(order.capacity());
        VertexSet uncolored = cand;
        int c = 0;
        while (!uncolored.empty()) {
            ++c;
            VertexSet avail = uncolored;
            while (!avail.empty()) {
                int v = avail.first();
                order.push_back(v);
                color.push_back(c);
                uncolored.reset(v);
                avail.reset(v);
                avail -= g.neighbors(v);
            }
        }
        VertexSet rest = cand;
        for (int i = static_cast<int>(order.size()) - 1; i >= 0; --i) {
            // colors ascend with i, so everything earlier is also hopeless
            if (cur.size() + static_cast<std::size_t>(color[static_cast<std::size_t>(i)]) <=
                best.size())
                return;
            int v = order[static_cast<std::size_t>(i)];
            cur.push_back(v);
            expand(rest & g.neighbors(v));
            cur.pop_back();
            rest.reset(v);
        }
    }
};

}  // namespace

Clique max_clique(const Graph& g, const OracleLimits& limits) {
    CliqueSearch search(g, limits.max_nodes);
    search.expand(g.all_vertices());
    Clique q;
    q.vertices = VertexSet(g.size());
    for (int v : search.best) q.vertices.set(v);
    q.size = static_cast<int>(search.best.size());
    return q;
}

std::optional<P5Witness> find_induced_p5(const Graph& g) {
    int n = g.size();
    std::vector<VertexSet> closed(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) {
        closed[static_cast<std::size_t>(v)] = g.neighbors(v);
        closed[static_cast<std::size_t>(v)].set(v);
    }
    // Every induced P5 has a middle vertex v3 whose neighbors v2, v4 on the
    // path are nonadjacent; the endpoints live in private neighborhoods.
    for (int v3 = 0; v3 < n; ++v3) {
        const VertexSet& nb3 = g.neighbors(v3);
        for (int v2 = nb3.first(); v2 >= 0; v2 = nb3.next(v2)) {
            for (int v4 = nb3.next(v2); v4 >= 0; v4 = nb3.next(v4)) {
                if (g.adjacent(v2, v4)) continue;
                VertexSet a_side = g.neighbors(v2);
                a_side -= closed[static_cast<std::size_t>(v3)];
                a_side -= closed[static_cast<std::size_t>(v4)];
                if (a_side.empty()) continue;
                VertexSet b_side = g.neighbors(v4);
                b_side -= closed[static_cast<std::size_t>(v2)];
                b_side -= closed[static_cast<std::size_t>(v3)];
                if (b_side.empty()) continue;
                for (int a = a_side.first(); a >= 0; a = a_side.next(a)) {
                    VertexSet ends = b_side;
                    ends -= closed[static_cast<std::size_t>(a)];
                    int b = ends.first();
                    if (b >= 0) return P5Witness{{a, v2, v3, v4, b}};
                }
            }
        }
    }
    return std::nullopt;
}

Coloring dsatur(const Graph& g) {
    int n = g.size();
    Coloring out;
    out.color_of.assign(static_cast<std::size_t>(n), -1);
    if (n == 0) return out;
    std::vector<VertexSet> seen(static_cast<std::size_t>(n), VertexSet(n));
    std::vector<int> sat(static_cast<std::size_t>(n), 0);
    int max_color = -1;
    for (int step = 0; step < n; ++step) {
        int v = -1;
        int best = -1;
        for (int i = 0; i < n; ++i)
            if (out.color_of[static_cast<std::size_t>(i)] < 0 &&
                sat[static_cast<std::size_t>(i)] > best) {
                v = i;
                best = sat[static_cast<std::size_t>(i)];
            }
        int c = 0;
        while (seen[static_cast<std::size_t>(v)].test(c)) ++c;
        out.color_of[static_cast<std::size_t>(v)] = c;
        max_color = std::max(max_color, c);
        g.neighbors(v).for_each([&](int u) {
            if (!seen[static_cast<std::size_t>(u)].test(c)) {
                seen[static_cast<std::size_t>(u)].set(c);
                ++sat[static_cast<std::size_t>(u)];
            }
        });
    }
    out.num_colors = max_color + 1;
    return out;
}

namespace {

struct KColorSearch {
    const Graph& g;
    int n;
    int k;
    std::uint64_t budget;
    std::uint64_t nodes = 0;
    std::vector<int> color;
    std::vector<std::vector<int>> cnt;  // cnt[u][c]: colored neighbors of u with color c
    std::vector<int> sat;
    int assigned = 0;
    int max_used = -1;

    KColorSearch(const Graph& graph, int colors, std::uint64_t b)
        : g(graph),
          n(graph.size()),
          k(colors),
          budget(b),
          color(static_cast<std::size_t>(graph.size()), -1),
          cnt(static_cast<std::size_t>(graph.size()),
              std::vector<int>(static_cast<std::size_t>(colors), 0)),
          sat(static_cast<std::size_t>(graph.size()), 0) {}

    void assign(int v, int c) {
        color[static_cast<std::size_t>(v)] = c;
        ++assigned;
        g.neighbors(v).for_each([&](int u) {
            if (cnt[static_cast<std::size_t>(u)][static_cast<std::size_t>(c)]++ == 0)
                ++sat[static_cast<std::size_t>(u)];
        });
    }

    void unassign(int v, int c) {
        color[static_cast<std::size_t>(v)] = -1;
        --assigned;
        g.neighbors(v).for_each([&](int u) {
            if (--cnt[static_cast<std::size_t>(u)][static_cast<std::size_t>(c)] == 0)
                --sat[static_cast<std::size_t>(u)];
        });
    }

    bool solve() {
        if (assigned == n) return true;
        int v = -1;
        int best = -1;
        for (int i = 0; i < n; ++i)
            if (color[static_cast<std::size_t>(i)] < 0 && sat[static_cast<std::size_t>(i)] > best) {
                v = i;
                best = sat[static_cast<std::size_t>(i)];
            }
        // only the first unused color is tried: fresh colors are interchangeable
        int limit = std::min(k - 1, max_used + 1);
        for (int c = 0; c <= limit; ++c) {
            if (cnt[static_cast<std::size_t>(v)][static_cast<std::size_t>(c)] > 0) continue;
            if (++nodes > budget)
                throw OracleBudgetError("color_at_most: node budget of " +
                                        std::to_string(budget) + " exhausted");
            int saved_max = max_used;
            max_used = std::max(max_used, c);
            assign(v, c);
            if (solve()) return true;
            unassign(v, c);
            max_used = saved_max;
        }
        return false;
    }
};

}  // namespace

std::optional<Coloring> color_at_most(const Graph& g, int k, const OracleLimits& limits) {
    if (k < 0) throw UsageError("color_at_most: negative color count");
    int n = g.size();
    if (n == 0) return Coloring{{}, 0};
    Coloring greedy = dsatur(g);
    if (greedy.num_colors <= k) return greedy;
    if (k == 0) return std::nullopt;
    Clique q = max_clique(g, limits);
    if (q.size > k) return std::nullopt;
    KColorSearch search(g, k, limits.max_nodes);
    // a maximum clique needs pairwise distinct colors; pinning them costs nothing
    int c = 0;
    q.vertices.for_each([&](int v) { search.assign(v, c++); });
    search.max_used = q.size - 1;
    if (!search.solve()) return std::nullopt;
    Coloring out;
    out.color_of = search.color;
    out.num_colors = search.max_used + 1;
    return out;
}

ChromaticResult exact_chromatic(const Graph& g, const OracleLimits& limits) {
    Coloring ub = dsatur(g);
    Clique lb = max_clique(g, limits);
    for (int k = lb.size; k < ub.num_colors; ++k) {
        if (auto c = color_at_most(g, k, limits)) return ChromaticResult{c->num_colors, *c};
    }
    return ChromaticResult{ub.num_colors, ub};
}

}  // namespace p5
