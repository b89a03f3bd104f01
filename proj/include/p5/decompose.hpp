#pragma once

#include <functional>
#include <variant>
#include <vector>

#include <json.hpp>

#include "p5/graph.hpp"
#include "p5/oracles.hpp"

namespace p5 {

// Ambient recursion parameters: w is the clique number of the graph being
// decomposed, m = floor(w/2). Callers own the truth of w; the structural
// guarantees below hold when it is genuine.
struct RecursionContext {
    int w = 1;
    int m = 0;

    static RecursionContext for_omega(int w) { return RecursionContext{w, w / 2}; }
};

// Classification hook: decides whether a candidate piece is "high" (cannot be
// colored within the f(m) sub-budget). Default is the clique surrogate
// omega(piece) > m; the experimental chi classifier swaps in the exact oracle.
using HighTest = std::function<bool(const VertexSet&)>;

struct GrowthStep {
    int v = -1;
    VertexSet z;
    VertexSet c_next;
};

// A joint: y complete to c, c a connected piece too rich to take one f(m)
// block, unextendable by the growth step.
struct JointResult {
    VertexSet y;
    VertexSet c;
    int omega_c = 0;
    std::vector<GrowthStep> history;
};

struct LowChromatic {
    int omega_b = 0;
};

using JointOutcome = std::variant<JointResult, LowChromatic, P5Witness>;

// pre: b is a connected component of g minus the closed neighborhood of a.
JointOutcome grow_joint(const Graph& g, int a, const VertexSet& b, const RecursionContext& ctx,
                        const OracleLimits& limits = {}, const HighTest& is_high = {});

struct Connected {};

// Separator between two big cliques, split into the part complete to the
// P-side component and the part complete to the Q-side.
struct CliqueSeparation {
    VertexSet x;
    VertexSet x_p;
    VertexSet x_q;
    VertexSet side_p;  // component of g minus x containing P
    VertexSet side_q;
    int omega_x_p = 0;
    int omega_x_q = 0;
};

using SeparationOutcome = std::variant<Connected, CliqueSeparation, P5Witness>;

// pre: p, q disjoint cliques, each larger than ctx.m.
SeparationOutcome separate_cliques(const Graph& g, const Clique& p, const Clique& q,
                                   const RecursionContext& ctx, const OracleLimits& limits = {});

// One cut vertex's view of a component B: N, the high components R_i with
// their complete attachment sets Y_i, the low remainder S, and a minimal
// cover I of Y with pairwise-adjacent private representatives.
struct CutsetDecomposition {
    int v = -1;  // minimum-id vertex of the cutset
    int u = -1;  // neighbor of v outside B, used in witness extraction
    VertexSet n;
    std::vector<VertexSet> r;
    VertexSet s;
    std::vector<VertexSet> yi;
    std::vector<int> cover;  // I, indices into r/yi
    std::vector<int> reps;   // private representative inside yi[cover[k]]
};

using CutsetOutcome = std::variant<CutsetDecomposition, P5Witness>;

// pre: x a minimal cutset of g (every x in it reattaches all components);
// b a component of g minus x.
CutsetOutcome cutset_partition(const Graph& g, const VertexSet& x, const VertexSet& b,
                               const RecursionContext& ctx, const OracleLimits& limits = {},
                               const HighTest& is_high = {});

// pre: g connected, g minus x disconnected. Returns a subset that is still a
// cutset and loses that property on any single removal. Deterministic:
// removals attempted in increasing vertex id, restarting after each success.
VertexSet minimalize_cutset(const Graph& g, VertexSet x);

nlohmann::json to_json(const VertexSet& s);
nlohmann::json to_json(const JointResult& j);
nlohmann::json to_json(const CliqueSeparation& s);
nlohmann::json to_json(const CutsetDecomposition& d);

}  // namespace p5
