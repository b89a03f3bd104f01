#include "p5/colorer.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <utility>

#include "p5/common.hpp"

namespace p5 {

namespace {

struct P5Found {
    P5Witness w;  // original-graph ids
};

void validate_options(const ColorerOptions& opts) {
    if (opts.omega_base < 1 || opts.omega_base > 64)
        throw UsageError("colorer: omega_base must be in [1, 64]");
    if (opts.base_n_threshold < 0) throw UsageError("colorer: negative base threshold");
    if (opts.limits.max_nodes <= 0) throw UsageError("colorer: oracle budget must be positive");
}

void check_context(const RecursionContext& ctx) {
    if (ctx.w < 1 || ctx.m != ctx.w / 2)
        throw UsageError("colorer: recursion context requires w >= 1 and m == w/2");
}

P5Witness map_witness(const P5Witness& w, const std::vector<int>& to_orig) {
    P5Witness out;
    for (int i = 0; i < 5; ++i) out.v[i] = to_orig[static_cast<std::size_t>(w.v[i])];
    return out;
}

std::pair<Graph, std::vector<int>> materialize(const Graph& h, const std::vector<int>& to_orig,
                                               const VertexSet& s) {
    InducedSubgraph sub = induced_subgraph(h, s);
    std::vector<int> map_orig(sub.vertex_map.size());
    for (std::size_t i = 0; i < sub.vertex_map.size(); ++i)
        map_orig[i] = to_orig[static_cast<std::size_t>(sub.vertex_map[i])];
    return {std::move(sub.graph), std::move(map_orig)};
}

Clique clique_within(const Graph& g, const VertexSet& s, const OracleLimits& limits) {
    Clique out{VertexSet(g.size()), 0};
    if (s.empty()) return out;
    InducedSubgraph sub = induced_subgraph(g, s);
    Clique local = max_clique(sub.graph, limits);
    local.vertices.for_each([&](int v) { out.vertices.set(sub.vertex_map[static_cast<std::size_t>(v)]); });
    out.size = local.size;
    return out;
}

constexpr int kChiClassifierCap = 25;

class Engine {
public:
    Engine(const Graph& g, const ColorerOptions& opts)
        : g_(g), opts_(opts), bound_(opts.omega_base), assign_(static_cast<std::size_t>(g.size()), -1) {}

    std::uint64_t cb(int w) const { return bound_.color_budget(w); }
    const BoundFunction& bound() const { return bound_; }
    std::vector<std::int64_t>& assignment() { return assign_; }

    std::int64_t recount(const std::vector<int>& scope) const {
        std::set<std::int64_t> seen;
        for (int ov : scope) {
            const std::int64_t c = assign_[static_cast<std::size_t>(ov)];
            if (c < 0) throw IntegrityError("colorer: scope vertex left uncolored");
            seen.insert(c);
        }
        return static_cast<std::int64_t>(seen.size());
    }

    HighTest make_high(const Graph& h, int m) const {
        if (!opts_.chi_classifier) return {};
        const std::uint64_t bm = cb(m);
        const OracleLimits limits = opts_.limits;
        return [&h, m, bm, limits](const VertexSet& s) {
            if (s.empty()) return false;
            InducedSubgraph sub = induced_subgraph(h, s);
            if (sub.graph.size() <= kChiClassifierCap) {
                ChromaticResult r = exact_chromatic(sub.graph, limits);
                return static_cast<std::uint64_t>(r.chi) > bm;
            }
            return max_clique(sub.graph, limits).size > m;
        };
    }

    TraceNode color_scope(const Graph& h, const std::vector<int>& to_orig, std::uint64_t base,
                          std::uint64_t cap);

    TraceNode chi_low_salvage(const Graph& h, const std::vector<int>& to_orig, std::uint64_t base,
                              std::uint64_t cap, TraceNode node);

    std::variant<TraceNode, FallbackCutset> joint_component(const Graph& h,
                                                            const std::vector<int>& to_orig, int a,
                                                            const VertexSet& b, int w, int m,
                                                            std::uint64_t region_base);

    void cutset_interior(const Graph& h, const std::vector<int>& to_orig, const VertexSet& x,
                         int w, int m, std::uint64_t base, std::vector<TraceNode>& children);

private:
    TraceNode color_child(const Graph& h, const std::vector<int>& to_orig, const VertexSet& s,
                          std::uint64_t base, std::uint64_t cap) {
        auto [sub, sub_map] = materialize(h, to_orig, s);
        return color_scope(sub, sub_map, base, cap);
    }

    const Graph& g_;
    ColorerOptions opts_;
    BoundFunction bound_;
    std::vector<std::int64_t> assign_;
};

TraceNode Engine::color_scope(const Graph& h, const std::vector<int>& to_orig, std::uint64_t base,
                              std::uint64_t cap) {
    TraceNode node;
    node.palette_base = base;
    node.palette_cap = cap;
    node.scope = to_orig;
    const int n = h.size();
    if (n == 0) {
        node.rule = "base-exact";
        return node;
    }

    const int w = max_clique(h, opts_.limits).size;
    const int m = w / 2;
    node.w = w;
    node.m = m;
    node.budget = cb(w);
    if (node.budget > cap) return chi_low_salvage(h, to_orig, base, cap, std::move(node));

    if (opts_.fast_path) {
        Coloring d = dsatur(h);
        if (static_cast<std::uint64_t>(d.num_colors) <= node.budget) {
            for (int v = 0; v < n; ++v)
                assign_[static_cast<std::size_t>(to_orig[static_cast<std::size_t>(v)])] =
                    static_cast<std::int64_t>(base) + d.color_of[static_cast<std::size_t>(v)];
            node.rule = "heuristic-met-budget";
            node.colors_used = d.num_colors;
            return node;
        }
    }

    std::vector<VertexSet> comps = components(h);
    if (comps.size() >= 2) {
        node.rule = "disconnected";
        for (const VertexSet& comp : comps)
            node.children.push_back(color_child(h, to_orig, comp, base, cap));
        node.colors_used = recount(node.scope);
        return node;
    }

    if (w <= opts_.omega_base || n <= opts_.base_n_threshold) {
        ChromaticResult res = exact_chromatic(h, opts_.limits);
        if (static_cast<std::uint64_t>(res.chi) > node.budget) {
            if (auto wit = find_induced_p5(h)) throw P5Found{map_witness(*wit, to_orig)};
            throw IntegrityError("colorer: chromatic number exceeds budget with no witness");
        }
        for (int v = 0; v < n; ++v)
            assign_[static_cast<std::size_t>(to_orig[static_cast<std::size_t>(v)])] =
                static_cast<std::int64_t>(base) + res.coloring.color_of[static_cast<std::size_t>(v)];
        node.rule = "base-exact";
        node.colors_used = res.chi;
        return node;
    }

    const std::uint64_t bw1 = cb(w - 1);
    const std::uint64_t bm = cb(m);
    {
        const unsigned __int128 lhs = static_cast<unsigned __int128>(bw1) +
                                      static_cast<unsigned __int128>(w + 2) * bm;
        if (lhs > node.budget) throw IntegrityError("colorer: recursion arithmetic fails");
        if (w >= 5 && !bound_.check_recursion_inequality(w).holds)
            throw IntegrityError("colorer: recursion inequality fails");
    }

    int a = 0;
    for (int v = 1; v < n; ++v)
        if (h.degree(v) > h.degree(a)) a = v;

    VertexSet rest_set = VertexSet::full(n);
    rest_set -= h.neighbors(a);
    rest_set.reset(a);
    std::vector<VertexSet> bs = components_within(h, rest_set);

    const std::uint64_t region_base = base + bw1;

    std::vector<TraceNode> children;
    children.push_back(color_child(h, to_orig, h.neighbors(a), base, bw1));
    assign_[static_cast<std::size_t>(to_orig[static_cast<std::size_t>(a)])] =
        static_cast<std::int64_t>(region_base);

    FallbackCutset fb;
    bool fell_back = false;
    for (const VertexSet& b : bs) {
        auto out = joint_component(h, to_orig, a, b, w, m, region_base);
        if (auto* t = std::get_if<TraceNode>(&out)) {
            children.push_back(std::move(*t));
        } else {
            fb = std::move(std::get<FallbackCutset>(out));
            fell_back = true;
            break;
        }
    }

    if (!fell_back) {
        node.rule = "neighborhood-split";
        node.children = std::move(children);
        node.colors_used = recount(node.scope);
        return node;
    }

    for (int ov : node.scope) assign_[static_cast<std::size_t>(ov)] = -1;

    if (fb.cutset.empty()) throw IntegrityError("colorer: empty fallback cutset");
    VertexSet x = minimalize_cutset(h, fb.cutset);
    VertexSet p1 = fb.part1 & x;
    VertexSet p2 = fb.part2 & x;

    node.rule = fb.from_separation ? "clique-fallback" : "cutset-fallback";
    node.children.clear();
    cutset_interior(h, to_orig, x, w, m, base, node.children);
    const std::uint64_t part_base = base + static_cast<std::uint64_t>(w - 1) * bm + bw1 + bm;
    if (!p1.empty()) node.children.push_back(color_child(h, to_orig, p1, part_base, bm));
    if (!p2.empty()) node.children.push_back(color_child(h, to_orig, p2, part_base + bm, bm));
    node.colors_used = recount(node.scope);
    return node;
}

// A scope whose clique budget exceeds its block. Without the chi classifier
// that is a recursion bug; with it, the block was admitted on chromatic
// evidence, so the coloring itself is the proof that the block suffices.
TraceNode Engine::chi_low_salvage(const Graph& h, const std::vector<int>& to_orig,
                                  std::uint64_t base, std::uint64_t cap, TraceNode node) {
    if (!opts_.chi_classifier)
        throw IntegrityError("colorer: sub-palette below the scope budget");
    const int n = h.size();
    if (opts_.fast_path) {
        Coloring d = dsatur(h);
        if (static_cast<std::uint64_t>(d.num_colors) <= cap) {
            for (int v = 0; v < n; ++v)
                assign_[static_cast<std::size_t>(to_orig[static_cast<std::size_t>(v)])] =
                    static_cast<std::int64_t>(base) + d.color_of[static_cast<std::size_t>(v)];
            node.rule = "chi-low";
            node.colors_used = d.num_colors;
            return node;
        }
    }
    if (n <= kChiClassifierCap) {
        ChromaticResult res = exact_chromatic(h, opts_.limits);
        if (static_cast<std::uint64_t>(res.chi) > cap)
            throw IntegrityError("colorer: sub-palette below the scope budget");
        for (int v = 0; v < n; ++v)
            assign_[static_cast<std::size_t>(to_orig[static_cast<std::size_t>(v)])] =
                static_cast<std::int64_t>(base) +
                res.coloring.color_of[static_cast<std::size_t>(v)];
        node.rule = "chi-low";
        node.colors_used = res.chi;
        return node;
    }
    std::vector<VertexSet> comps = components(h);
    if (comps.size() >= 2) {
        node.rule = "disconnected";
        for (const VertexSet& comp : comps)
            node.children.push_back(color_child(h, to_orig, comp, base, cap));
        node.colors_used = recount(node.scope);
        return node;
    }
    throw IntegrityError("colorer: sub-palette below the scope budget");
}

std::variant<TraceNode, FallbackCutset> Engine::joint_component(const Graph& h,
                                                                const std::vector<int>& to_orig,
                                                                int a, const VertexSet& b, int w,
                                                                int m, std::uint64_t region_base) {
    const std::uint64_t bm = cb(m);
    const RecursionContext ctx{w, m};

    TraceNode wrapper;
    wrapper.rule = "joint-branch";
    wrapper.palette_base = region_base;
    wrapper.palette_cap = static_cast<std::uint64_t>(w - m + 2) * bm;
    b.for_each([&](int v) { wrapper.scope.push_back(to_orig[static_cast<std::size_t>(v)]); });
    wrapper.w = clique_within(h, b, opts_.limits).size;
    wrapper.m = wrapper.w / 2;
    wrapper.budget = cb(wrapper.w);

    JointOutcome out = grow_joint(h, a, b, ctx, opts_.limits, make_high(h, m));
    if (auto* pw = std::get_if<P5Witness>(&out)) throw P5Found{map_witness(*pw, to_orig)};

    if (std::holds_alternative<LowChromatic>(out)) {
        wrapper.children.push_back(color_child(h, to_orig, b, region_base, bm));
        wrapper.colors_used = recount(wrapper.scope);
        return wrapper;
    }

    const JointResult& jr = std::get<JointResult>(out);
    VertexSet x_att(h.size());
    h.neighbors(a).for_each([&](int v) {
        if (h.neighbors(v).intersects(jr.c)) x_att.set(v);
    });
    Clique q = clique_within(h, x_att, opts_.limits);

    if (q.size < w - m) {
        VertexSet cut = x_att | jr.y;
        if (cut.empty()) throw IntegrityError("colorer: joint core is isolated");
        return FallbackCutset{cut, x_att, jr.y, false};
    }

    VertexSet p(h.size());
    {
        int need = w - m;
        for (int v = q.vertices.first(); v >= 0 && need > 0; v = q.vertices.next(v), --need)
            p.set(v);
    }

    VertexSet rest = b;
    rest -= jr.c;
    rest -= jr.y;
    if (!rest.empty()) {
        const Clique rest_clique = clique_within(h, rest, opts_.limits);
        if (rest_clique.size > m) {
            Clique core_clique = clique_within(h, jr.c, opts_.limits);
            auto trim = [&](const Clique& c) {
                Clique t{VertexSet(h.size()), m + 1};
                int need = m + 1;
                for (int v = c.vertices.first(); v >= 0 && need > 0; v = c.vertices.next(v), --need)
                    t.vertices.set(v);
                return t;
            };
            if (core_clique.size <= m) throw IntegrityError("colorer: joint core lost its big clique");
            SeparationOutcome sep = separate_cliques(h, trim(core_clique), trim(rest_clique), ctx,
                                                     opts_.limits);
            if (auto* pw = std::get_if<P5Witness>(&sep)) throw P5Found{map_witness(*pw, to_orig)};
            if (std::holds_alternative<Connected>(sep))
                throw IntegrityError("colorer: joint remainder connects to the core");
            const CliqueSeparation& cs = std::get<CliqueSeparation>(sep);
            return FallbackCutset{cs.x, cs.x_p, cs.x_q, true};
        }
    }

    VertexSet c0 = jr.c;
    p.for_each([&](int v) { c0 &= h.neighbors(v); });

    if (!jr.y.empty()) wrapper.children.push_back(color_child(h, to_orig, jr.y, region_base, bm));
    if (!c0.empty()) wrapper.children.push_back(color_child(h, to_orig, c0, region_base + bm, bm));

    VertexSet remaining = jr.c;
    remaining -= c0;
    int idx = 0;
    for (int v = p.first(); v >= 0; v = p.next(v), ++idx) {
        VertexSet uv = remaining;
        uv -= h.neighbors(v);
        if (uv.empty()) continue;
        wrapper.children.push_back(color_child(
            h, to_orig, uv, region_base + static_cast<std::uint64_t>(2 + idx) * bm, bm));
        remaining -= uv;
    }
    if (!remaining.empty())
        throw IntegrityError("colorer: joint core not covered by the clique blocks");

    if (!rest.empty()) {
        for (int v = rest.first(); v >= 0; v = rest.next(v))
            if (h.neighbors(v).intersects(jr.c))
                throw IntegrityError("colorer: joint remainder touches the core");
        wrapper.children.push_back(color_child(h, to_orig, rest, region_base + bm, bm));
    }

    wrapper.colors_used = recount(wrapper.scope);
    return wrapper;
}

void Engine::cutset_interior(const Graph& h, const std::vector<int>& to_orig, const VertexSet& x,
                             int w, int m, std::uint64_t base, std::vector<TraceNode>& children) {
    const std::uint64_t bm = cb(m);
    const std::uint64_t bw1 = cb(w - 1);
    const RecursionContext ctx{w, m};
    const HighTest high = make_high(h, m);

    VertexSet kept = VertexSet::full(h.size());
    kept -= x;
    const std::uint64_t z_base = base + static_cast<std::uint64_t>(w - 1) * bm;
    const std::uint64_t s_base = z_base + bw1;

    for (const VertexSet& bc : components_within(h, kept)) {
        CutsetOutcome out = cutset_partition(h, x, bc, ctx, opts_.limits, high);
        if (auto* pw = std::get_if<P5Witness>(&out)) throw P5Found{map_witness(*pw, to_orig)};
        const CutsetDecomposition& d = std::get<CutsetDecomposition>(out);

        VertexSet union_y(h.size());
        for (const VertexSet& yi : d.yi) union_y |= yi;

        VertexSet assigned(h.size());
        for (std::size_t k = 0; k < d.cover.size(); ++k) {
            if (k >= static_cast<std::size_t>(w - 1))
                throw IntegrityError("colorer: attachment blocks exceed the clique bound");
            VertexSet block = d.yi[static_cast<std::size_t>(d.cover[k])];
            block -= assigned;
            if (block.empty()) continue;
            children.push_back(
                color_child(h, to_orig, block, base + static_cast<std::uint64_t>(k) * bm, bm));
            assigned |= block;
        }

        VertexSet z = d.n;
        z -= union_y;
        for (const VertexSet& ri : d.r) z |= ri;
        if (!z.empty()) children.push_back(color_child(h, to_orig, z, z_base, bw1));
        if (!d.s.empty()) children.push_back(color_child(h, to_orig, d.s, s_base, bm));
    }
}

std::vector<int> identity_map(int n) {
    std::vector<int> ids(static_cast<std::size_t>(n));
    std::iota(ids.begin(), ids.end(), 0);
    return ids;
}

}  // namespace

ColorResult color_p5free(const Graph& g, const ColorerOptions& opts) {
    validate_options(opts);
    const int n = g.size();
    ColoringCertificate cert;
    if (n == 0) {
        cert.trace.rule = "base-exact";
        return cert;
    }
    Engine eng(g, opts);
    try {
        const int w = max_clique(g, opts.limits).size;
        const std::uint64_t budget = eng.cb(w);
        if (budget > (std::uint64_t{1} << 62))
            throw UsageError("color_p5free: clique number too large for the palette arithmetic");
        TraceNode root = eng.color_scope(g, identity_map(n), 0, budget);
        cert.color_of = std::move(eng.assignment());
        std::int64_t mx = -1;
        for (std::int64_t c : cert.color_of) {
            if (c < 0) throw IntegrityError("color_p5free: vertex left uncolored");
            mx = std::max(mx, c);
        }
        cert.num_colors = mx + 1;
        cert.omega = w;
        cert.budget = budget;
        if (static_cast<std::uint64_t>(cert.num_colors) > budget)
            throw IntegrityError("color_p5free: assignment exceeded the budget");
        cert.trace = std::move(root);
        return cert;
    } catch (const P5Found& found) {
        if (!found.w.validate(g))
            throw IntegrityError("color_p5free: constructed witness is not an induced P5");
        return found.w;
    } catch (const IntegrityError&) {
        if (auto wit = find_induced_p5(g)) return *wit;
        throw;
    }
}

JointOutcomeColoring color_component_via_joint(const Graph& g, int a, const VertexSet& b,
                                               const RecursionContext& ctx,
                                               std::uint64_t palette_base,
                                               const ColorerOptions& opts) {
    validate_options(opts);
    check_context(ctx);
    Engine eng(g, opts);
    try {
        auto out = eng.joint_component(g, identity_map(g.size()), a, b, ctx.w, ctx.m, palette_base);
        if (auto* t = std::get_if<TraceNode>(&out))
            return ScopedColoring{std::move(eng.assignment()), std::move(*t)};
        return std::get<FallbackCutset>(out);
    } catch (const P5Found& found) {
        if (!found.w.validate(g))
            throw IntegrityError("color_component_via_joint: constructed witness is invalid");
        return found.w;
    }
}

CutsetColorResult color_via_cutset(const Graph& g, const VertexSet& x, const RecursionContext& ctx,
                                   std::uint64_t palette_base, const ColorerOptions& opts) {
    validate_options(opts);
    check_context(ctx);
    Engine eng(g, opts);
    try {
        TraceNode node;
        node.rule = "cutset-fallback";
        node.w = ctx.w;
        node.m = ctx.m;
        node.budget = eng.cb(ctx.w);
        node.palette_base = palette_base;
        node.palette_cap = eng.cb(ctx.w - 1) +
                           static_cast<std::uint64_t>(ctx.w) * eng.cb(ctx.m);
        eng.cutset_interior(g, identity_map(g.size()), x, ctx.w, ctx.m, palette_base,
                            node.children);
        VertexSet kept = VertexSet::full(g.size());
        kept -= x;
        kept.for_each([&](int v) { node.scope.push_back(v); });
        node.colors_used = eng.recount(node.scope);
        return ScopedColoring{std::move(eng.assignment()), std::move(node)};
    } catch (const P5Found& found) {
        if (!found.w.validate(g))
            throw IntegrityError("color_via_cutset: constructed witness is invalid");
        return found.w;
    }
}

namespace {

class Verifier {
public:
    Verifier(const Graph& g, const ColoringCertificate& cert, const ColorerOptions& opts)
        : g_(g), cert_(cert), opts_(opts), bound_(opts.omega_base) {}

    VerifyReport run() {
        const int n = g_.size();
        if (static_cast<int>(cert_.color_of.size()) != n)
            return fail("assignment size mismatch");
        for (int v = 0; v < n; ++v)
            if (cert_.color_of[static_cast<std::size_t>(v)] < 0)
                return fail("color out of range");
        for (const auto& [u, v] : g_.edges())
            if (cert_.color_of[static_cast<std::size_t>(u)] ==
                cert_.color_of[static_cast<std::size_t>(v)])
                return fail("improper edge (" + std::to_string(u) + "," + std::to_string(v) + ")");
        if (!classes_independent()) return fail("color class not independent");

        std::int64_t mx = -1;
        for (std::int64_t c : cert_.color_of) mx = std::max(mx, c);
        if (cert_.num_colors != mx + 1) return fail("num_colors mismatch");
        if (n > 0 && static_cast<std::uint64_t>(cert_.num_colors) > cert_.budget)
            return fail("budget exceeded");

        if (max_clique(g_, opts_.limits).size != cert_.omega) return fail("omega mismatch");
        try {
            if (bound_.color_budget(cert_.omega) != cert_.budget) return fail("budget mismatch");
        } catch (const UsageError&) {
            return fail("budget mismatch");
        }

        std::vector<int> everything = identity_map(n);
        if (cert_.trace.scope != everything) return fail("trace root scope mismatch");
        if (!walk(cert_.trace)) return VerifyReport{false, failure_};
        return VerifyReport{true, ""};
    }

private:
    VerifyReport fail(std::string msg) { return VerifyReport{false, std::move(msg)}; }

    bool fail_walk(std::string msg) {
        if (failure_.empty()) failure_ = std::move(msg);
        return false;
    }

    bool classes_independent() const {
        std::map<std::int64_t, std::vector<int>> classes;
        for (int v = 0; v < g_.size(); ++v)
            classes[cert_.color_of[static_cast<std::size_t>(v)]].push_back(v);
        for (const auto& [c, members] : classes)
            for (std::size_t i = 0; i < members.size(); ++i)
                for (std::size_t j = i + 1; j < members.size(); ++j)
                    if (g_.adjacent(members[i], members[j])) return false;
        return true;
    }

    bool walk(const TraceNode& node) {
        for (std::size_t i = 0; i < node.scope.size(); ++i) {
            const int v = node.scope[i];
            if (v < 0 || v >= g_.size()) return fail_walk("trace scope malformed");
            if (i > 0 && node.scope[i - 1] >= v) return fail_walk("trace scope malformed");
        }
        if (node.m != node.w / 2) return fail_walk("trace m mismatch");
        std::uint64_t node_budget = 0;
        try {
            node_budget = bound_.color_budget(node.w);
        } catch (const UsageError&) {
            return fail_walk("trace budget mismatch");
        }
        if (node.budget != node_budget) return fail_walk("trace budget mismatch");

        VertexSet scope_set(g_.size());
        for (int v : node.scope) scope_set.set(v);
        const int true_w =
            node.scope.empty() ? 0 : max_clique(induced_subgraph(g_, scope_set).graph, opts_.limits).size;
        if (true_w != node.w) return fail_walk("trace omega mismatch");

        std::set<std::int64_t> seen;
        for (int v : node.scope) {
            const std::int64_t c = cert_.color_of[static_cast<std::size_t>(v)];
            const std::uint64_t uc = static_cast<std::uint64_t>(c);
            if (uc < node.palette_base || uc - node.palette_base >= node.palette_cap)
                return fail_walk("trace palette violation");
            seen.insert(c);
        }
        if (static_cast<std::int64_t>(seen.size()) != node.colors_used)
            return fail_walk("trace color count mismatch");

        // joint-branch wrappers, chi-low blocks, and disconnected unions sit in
        // the enclosing block; their budget tracks the scope's clique number,
        // not the width they were handed. Discipline is enforced on their
        // children and by palette containment above.
        const bool budget_exempt = node.rule == "joint-branch" || node.rule == "chi-low" ||
                                   node.rule == "disconnected";
        if (!budget_exempt && node.budget > node.palette_cap)
            return fail_walk("trace budget overflow");

        VertexSet child_union(g_.size());
        std::size_t child_total = 0;
        // a joint-branch wrapper may hold a single child on its whole scope
        const bool allow_equal_scope = node.rule == "joint-branch";
        for (const TraceNode& child : node.children) {
            if (!node.scope.empty() &&
                (child.scope.size() > node.scope.size() ||
                 (!allow_equal_scope && child.scope.size() == node.scope.size())))
                return fail_walk("trace child not smaller");
            for (int v : child.scope) {
                if (!scope_set.test(v)) return fail_walk("trace child escapes scope");
                child_union.set(v);
            }
            child_total += child.scope.size();
            if (child.palette_base < node.palette_base ||
                child.palette_base + child.palette_cap > node.palette_base + node.palette_cap)
                return fail_walk("trace child palette escape");
        }
        if (child_total != static_cast<std::size_t>(child_union.count()))
            return fail_walk("trace children overlap");

        const std::size_t covered = static_cast<std::size_t>(child_union.count());
        const std::uint64_t bm = bound_.color_budget(node.m);
        const std::uint64_t bw1 = node.w >= 1 ? bound_.color_budget(node.w - 1) : 0;

        if (node.rule == "base-exact" || node.rule == "heuristic-met-budget" ||
            node.rule == "chi-low") {
            if (!node.children.empty()) return fail_walk("trace leaf has children");
            if (static_cast<std::uint64_t>(node.colors_used) > node.budget && !node.scope.empty())
                return fail_walk("trace node exceeds own budget");
        } else if (node.rule == "disconnected") {
            if (node.children.size() < 2) return fail_walk("trace disconnected underfull");
            for (const TraceNode& child : node.children)
                if (child.palette_base != node.palette_base ||
                    child.palette_cap != node.palette_cap)
                    return fail_walk("trace shared palette violation");
            if (covered != node.scope.size()) return fail_walk("trace scope coverage");
        } else if (node.rule == "neighborhood-split") {
            const unsigned __int128 total =
                static_cast<unsigned __int128>(bw1) +
                static_cast<unsigned __int128>(node.w - node.m + 2) * bm;
            if (total > node.budget) return fail_walk("trace arithmetic violation");
            if (covered + 1 != node.scope.size()) return fail_walk("trace scope coverage");
            bool seen_region = false;
            std::uint64_t region_base = 0, region_cap = 0;
            for (const TraceNode& child : node.children) {
                if (child.rule != "joint-branch") continue;
                if (!seen_region) {
                    region_base = child.palette_base;
                    region_cap = child.palette_cap;
                    seen_region = true;
                } else if (child.palette_base != region_base || child.palette_cap != region_cap) {
                    return fail_walk("trace component palette mismatch");
                }
            }
        } else if (node.rule == "joint-branch") {
            if (covered != node.scope.size()) return fail_walk("trace scope coverage");
        } else if (node.rule == "clique-fallback" || node.rule == "cutset-fallback") {
            const unsigned __int128 total =
                static_cast<unsigned __int128>(bw1) +
                static_cast<unsigned __int128>(node.w + 2) * bm;
            if (total > node.budget) return fail_walk("trace arithmetic violation");
            if (covered != node.scope.size()) return fail_walk("trace scope coverage");
        } else {
            return fail_walk("trace unknown rule");
        }

        for (const TraceNode& child : node.children)
            if (!walk(child)) return false;
        return true;
    }

    const Graph& g_;
    const ColoringCertificate& cert_;
    ColorerOptions opts_;
    BoundFunction bound_;
    std::string failure_;
};

}  // namespace

VerifyReport verify_certificate(const Graph& g, const ColoringCertificate& cert,
                                const ColorerOptions& opts) {
    validate_options(opts);
    if (g.size() == 0) {
        if (!cert.color_of.empty()) return {false, "assignment size mismatch"};
        if (cert.num_colors != 0) return {false, "num_colors mismatch"};
        if (cert.omega != 0) return {false, "omega mismatch"};
        return {true, ""};
    }
    Verifier v(g, cert, opts);
    return v.run();
}

void count_rules(const TraceNode& node, std::map<std::string, int>& counts) {
    ++counts[node.rule];
    for (const TraceNode& child : node.children) count_rules(child, counts);
}

nlohmann::json to_json(const TraceNode& node) {
    nlohmann::json kids = nlohmann::json::array();
    for (const TraceNode& child : node.children) kids.push_back(to_json(child));
    nlohmann::json out;
    out["budget"] = node.budget;
    out["children"] = std::move(kids);
    out["colors_used"] = node.colors_used;
    out["m"] = node.m;
    out["palette_base"] = node.palette_base;
    out["palette_cap"] = node.palette_cap;
    out["rule"] = node.rule;
    out["scope"] = node.scope;
    out["w"] = node.w;
    return out;
}

nlohmann::json to_json(const ColoringCertificate& cert) {
    nlohmann::json out;
    out["assignment"] = cert.color_of;
    out["budget"] = cert.budget;
    out["num_colors"] = cert.num_colors;
    out["omega"] = cert.omega;
    out["trace"] = to_json(cert.trace);
    return out;
}

namespace {

TraceNode trace_from_json(const nlohmann::json& j) {
    TraceNode node;
    node.rule = j.at("rule").get<std::string>();
    node.scope = j.at("scope").get<std::vector<int>>();
    node.w = j.at("w").get<int>();
    node.m = j.at("m").get<int>();
    node.budget = j.at("budget").get<std::uint64_t>();
    node.palette_base = j.at("palette_base").get<std::uint64_t>();
    node.palette_cap = j.at("palette_cap").get<std::uint64_t>();
    node.colors_used = j.at("colors_used").get<std::int64_t>();
    for (const nlohmann::json& child : j.at("children"))
        node.children.push_back(trace_from_json(child));
    return node;
}

}  // namespace

ColoringCertificate certificate_from_json(const nlohmann::json& j) {
    try {
        ColoringCertificate cert;
        cert.color_of = j.at("assignment").get<std::vector<std::int64_t>>();
        cert.num_colors = j.at("num_colors").get<std::int64_t>();
        cert.omega = j.at("omega").get<int>();
        cert.budget = j.at("budget").get<std::uint64_t>();
        cert.trace = trace_from_json(j.at("trace"));
        return cert;
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("malformed certificate: ") + e.what());
    }
}

}  // namespace p5
