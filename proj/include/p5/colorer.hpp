#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "p5/bound.hpp"
#include "p5/decompose.hpp"
#include "p5/graph.hpp"
#include "p5/oracles.hpp"

namespace p5 {

// Trace rule vocabulary:
//   base-exact           exact oracle colored the scope
//   heuristic-met-budget DSATUR met the scope budget
//   disconnected         components colored with a shared palette
//   neighborhood-split   N(a) block + per-component joint regions + a itself
//   joint-branch         one component's joint machinery completed
//   clique-fallback      scope recolored around a separator of two big cliques
//   cutset-fallback      scope recolored around an X-union-Y style cutset
//   chi-low              block admitted on chromatic evidence (classifier runs
//                        only); the coloring itself shows the block suffices
// clique-fallback and cutset-fallback share the same palette layout; the rule
// records which branch produced the cutset.
struct TraceNode {
    std::string rule;
    std::vector<int> scope;  // original-graph vertex ids, ascending
    int w = 0;
    int m = 0;
    std::uint64_t budget = 0;  // color_budget(w)
    std::uint64_t palette_base = 0;
    std::uint64_t palette_cap = 0;
    std::int64_t colors_used = 0;  // distinct colors on the scope
    std::vector<TraceNode> children;
};

struct ColoringCertificate {
    std::vector<std::int64_t> color_of;
    std::int64_t num_colors = 0;  // 1 + max assigned color id
    int omega = 0;
    std::uint64_t budget = 0;
    TraceNode trace;
};

struct ColorerOptions {
    int omega_base = 4;  // below 4 the budget guarantees are void
    int base_n_threshold = 20;
    bool fast_path = true;
    bool chi_classifier = false;  // experimental: classify pieces by exact chi
    OracleLimits limits;
};

using ColorResult = std::variant<ColoringCertificate, P5Witness>;

ColorResult color_p5free(const Graph& g, const ColorerOptions& opts = {});

// Cutset signal from the joint machinery: the joint branch could not finish
// and hands back a cutset whose two parts each have small clique number.
struct FallbackCutset {
    VertexSet cutset;
    VertexSet part1;
    VertexSet part2;
    bool from_separation = false;
};

// Partial assignment over one scope; untouched vertices stay -1.
struct ScopedColoring {
    std::vector<std::int64_t> color_of;
    TraceNode trace;
};

using JointOutcomeColoring = std::variant<ScopedColoring, FallbackCutset, P5Witness>;

// pre: b a component of g minus N[a]. Colors b inside
// [palette_base, palette_base + (w-m+2)*color_budget(m)) or signals fallback.
JointOutcomeColoring color_component_via_joint(const Graph& g, int a, const VertexSet& b,
                                               const RecursionContext& ctx,
                                               std::uint64_t palette_base,
                                               const ColorerOptions& opts = {});

using CutsetColorResult = std::variant<ScopedColoring, P5Witness>;

// pre: x a minimal cutset of g. Colors g minus x inside
// [palette_base, palette_base + color_budget(w-1) + w*color_budget(m)).
CutsetColorResult color_via_cutset(const Graph& g, const VertexSet& x,
                                   const RecursionContext& ctx, std::uint64_t palette_base,
                                   const ColorerOptions& opts = {});

struct VerifyReport {
    bool pass = false;
    std::string failure;  // first violation, empty on pass
};

VerifyReport verify_certificate(const Graph& g, const ColoringCertificate& cert,
                                const ColorerOptions& opts = {});

void count_rules(const TraceNode& node, std::map<std::string, int>& counts);

nlohmann::json to_json(const TraceNode& node);
nlohmann::json to_json(const ColoringCertificate& cert);
ColoringCertificate certificate_from_json(const nlohmann::json& j);

}  // namespace p5
