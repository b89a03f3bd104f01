#include "p5/decompose.hpp"

#include <algorithm>
#include <string>

#include "p5/common.hpp"

namespace p5 {

namespace {

int omega_within(const Graph& g, const VertexSet& s, const OracleLimits& limits) {
    if (s.empty()) return 0;
    return max_clique(induced_subgraph(g, s).graph, limits).size;
}

void check_context(const RecursionContext& ctx) {
    if (ctx.w < 1 || ctx.m != ctx.w / 2)
        throw UsageError("recursion context requires w >= 1 and m == w/2");
}

bool connected_when_kept(const Graph& g, const VertexSet& kept) {
    if (kept.empty()) return true;
    return components_within(g, kept).size() == 1;
}

VertexSet all_of(const Graph& g) { return VertexSet::full(g.size()); }

}  // namespace

VertexSet minimalize_cutset(const Graph& g, VertexSet x) {
    const int n = g.size();
    if (n == 0) throw UsageError("minimalize_cutset: empty graph");
    VertexSet rest = all_of(g);
    rest -= x;
    if (!connected_when_kept(g, all_of(g)))
        throw UsageError("minimalize_cutset: graph is not connected");
    if (components_within(g, rest).size() < 2)
        throw UsageError("minimalize_cutset: set does not disconnect the graph");

    bool shrunk = true;
    while (shrunk) {
        shrunk = false;
        for (int v = x.first(); v >= 0; v = x.next(v)) {
            VertexSet kept = rest;
            kept.set(v);
            if (components_within(g, kept).size() >= 2) {
                x.reset(v);
                rest.set(v);
                shrunk = true;
                break;
            }
        }
    }
    return x;
}

JointOutcome grow_joint(const Graph& g, int a, const VertexSet& b, const RecursionContext& ctx,
                        const OracleLimits& limits, const HighTest& is_high) {
    check_context(ctx);
    const int n = g.size();
    if (a < 0 || a >= n) throw UsageError("grow_joint: vertex out of range");
    if (b.empty() || b.test(a)) throw UsageError("grow_joint: b must be nonempty and avoid a");
    if (b.intersects(g.neighbors(a)))
        throw UsageError("grow_joint: b meets the neighborhood of a");
    if (!connected_when_kept(g, b)) throw UsageError("grow_joint: b is not connected");
    for (int v = 0; v < n; ++v) {
        if (b.test(v) || v == a || g.adjacent(a, v)) continue;
        if (g.neighbors(v).intersects(b))
            throw UsageError("grow_joint: b is not a maximal component");
    }

    auto high = [&](const VertexSet& s) {
        if (is_high) return is_high(s);
        return omega_within(g, s, limits) > ctx.m;
    };

    if (!high(b)) return LowChromatic{omega_within(g, b, limits)};

    VertexSet y(n);
    VertexSet c = b;
    std::vector<GrowthStep> history;

    bool grew = true;
    while (grew) {
        grew = false;
        for (int v = g.neighbors(a).first(); v >= 0 && !grew; v = g.neighbors(a).next(v)) {
            VertexSet nc = g.neighbors(v) & c;
            if (nc.empty()) continue;
            VertexSet m_set = c;
            m_set -= nc;
            for (const VertexSet& piece : components_within(g, m_set)) {
                if (!high(piece)) continue;
                VertexSet z(n);
                for (int zv = nc.first(); zv >= 0; zv = nc.next(zv))
                    if (g.neighbors(zv).intersects(piece)) z.set(zv);
                if (z.empty()) throw IntegrityError("grow_joint: growth step with empty Z");
                for (int zv = z.first(); zv >= 0; zv = z.next(zv)) {
                    MixedEdgeWitness mw = mixed_edge_witness(g, zv, piece);
                    if (mw.kind == MixedEdgeWitness::Kind::Mixed)
                        return P5Witness{{a, v, zv, mw.a, mw.b}};
                    if (mw.kind == MixedEdgeWitness::Kind::Anticomplete)
                        throw IntegrityError("grow_joint: Z vertex lost its neighbor");
                }
                y |= z;
                c = piece;
                history.push_back(GrowthStep{v, z, piece});
                grew = true;
                break;
            }
        }
    }

    for (int yv = y.first(); yv >= 0; yv = y.next(yv))
        if (!c.is_subset_of(g.neighbors(yv)))
            throw IntegrityError("grow_joint: joint set not complete to core");

    return JointResult{y, c, omega_within(g, c, limits), std::move(history)};
}

SeparationOutcome separate_cliques(const Graph& g, const Clique& p, const Clique& q,
                                   const RecursionContext& ctx, const OracleLimits& limits) {
    check_context(ctx);
    const int n = g.size();
    auto check_clique = [&](const Clique& k, const char* name) {
        if (k.vertices.empty() || k.size != k.vertices.count())
            throw UsageError(std::string("separate_cliques: bad clique ") + name);
        for (int u = k.vertices.first(); u >= 0; u = k.vertices.next(u)) {
            if (u >= n) throw UsageError("separate_cliques: vertex out of range");
            for (int v = k.vertices.next(u); v >= 0; v = k.vertices.next(v))
                if (!g.adjacent(u, v))
                    throw UsageError(std::string("separate_cliques: ") + name + " is not a clique");
        }
    };
    check_clique(p, "p");
    check_clique(q, "q");
    if (p.vertices.intersects(q.vertices)) throw UsageError("separate_cliques: cliques overlap");
    if (p.size <= ctx.m || q.size <= ctx.m)
        throw UsageError("separate_cliques: cliques must be larger than m");

    for (int u = p.vertices.first(); u >= 0; u = p.vertices.next(u))
        if (g.neighbors(u).intersects(q.vertices)) return Connected{};

    VertexSet x = all_of(g);
    x -= p.vertices;
    x -= q.vertices;

    const int p0 = p.vertices.first();
    const int q0 = q.vertices.first();
    auto separates = [&](const VertexSet& cut) {
        VertexSet kept = all_of(g);
        kept -= cut;
        for (const VertexSet& comp : components_within(g, kept))
            if (comp.test(p0)) return !comp.test(q0);
        throw IntegrityError("separate_cliques: lost the p-side component");
    };

    bool shrunk = true;
    while (shrunk) {
        shrunk = false;
        for (int v = x.first(); v >= 0; v = x.next(v)) {
            VertexSet smaller = x;
            smaller.reset(v);
            if (separates(smaller)) {
                x = smaller;
                shrunk = true;
                break;
            }
        }
    }

    VertexSet kept = all_of(g);
    kept -= x;
    CliqueSeparation sep;
    sep.x = x;
    for (const VertexSet& comp : components_within(g, kept)) {
        if (comp.test(p0)) sep.side_p = comp;
        if (comp.test(q0)) sep.side_q = comp;
    }
    if (sep.side_p.empty() || sep.side_q.empty())
        throw IntegrityError("separate_cliques: sides missing after minimization");

    sep.x_p = VertexSet(n);
    sep.x_q = VertexSet(n);
    for (int v = x.first(); v >= 0; v = x.next(v)) {
        MixedEdgeWitness wp = mixed_edge_witness(g, v, sep.side_p);
        MixedEdgeWitness wq = mixed_edge_witness(g, v, sep.side_q);
        if (wp.kind == MixedEdgeWitness::Kind::Anticomplete ||
            wq.kind == MixedEdgeWitness::Kind::Anticomplete)
            throw IntegrityError("separate_cliques: cut vertex misses a side");
        if (wp.kind == MixedEdgeWitness::Kind::Mixed &&
            wq.kind == MixedEdgeWitness::Kind::Mixed)
            return P5Witness{{wp.b, wp.a, v, wq.a, wq.b}};
        if (wp.kind == MixedEdgeWitness::Kind::Complete)
            sep.x_p.set(v);
        else
            sep.x_q.set(v);
    }
    sep.omega_x_p = omega_within(g, sep.x_p, limits);
    sep.omega_x_q = omega_within(g, sep.x_q, limits);
    return sep;
}

CutsetOutcome cutset_partition(const Graph& g, const VertexSet& x, const VertexSet& b,
                               const RecursionContext& ctx, const OracleLimits& limits,
                               const HighTest& is_high) {
    check_context(ctx);
    const int n = g.size();
    if (x.empty()) throw UsageError("cutset_partition: empty cutset");
    VertexSet rest = all_of(g);
    rest -= x;
    std::vector<VertexSet> comps = components_within(g, rest);
    if (comps.size() < 2) throw UsageError("cutset_partition: set is not a cutset");
    bool b_found = false;
    for (const VertexSet& comp : comps) b_found = b_found || comp == b;
    if (!b_found) throw UsageError("cutset_partition: b is not a component of g minus x");
    for (int v = x.first(); v >= 0; v = x.next(v)) {
        VertexSet kept = rest;
        kept.set(v);
        if (components_within(g, kept).size() != 1)
            throw UsageError("cutset_partition: cutset is not minimal");
    }

    auto high = [&](const VertexSet& s) {
        if (is_high) return is_high(s);
        return omega_within(g, s, limits) > ctx.m;
    };

    CutsetDecomposition d;
    d.v = x.first();
    d.u = -1;
    for (int cand = g.neighbors(d.v).first(); cand >= 0; cand = g.neighbors(d.v).next(cand)) {
        if (!x.test(cand) && !b.test(cand)) {
            d.u = cand;
            break;
        }
    }
    if (d.u < 0) throw IntegrityError("cutset_partition: v has no neighbor outside b");

    d.n = g.neighbors(d.v) & b;
    VertexSet off_n = b;
    off_n -= d.n;
    d.s = VertexSet(n);
    for (const VertexSet& comp : components_within(g, off_n)) {
        if (high(comp))
            d.r.push_back(comp);
        else
            d.s |= comp;
    }

    for (const VertexSet& ri : d.r) {
        VertexSet attach(n);
        for (int y = d.n.first(); y >= 0; y = d.n.next(y))
            if (g.neighbors(y).intersects(ri)) attach.set(y);
        d.yi.push_back(attach);
    }

    for (std::size_t i = 0; i < d.r.size(); ++i) {
        for (int y = d.yi[i].first(); y >= 0; y = d.yi[i].next(y)) {
            MixedEdgeWitness mw = mixed_edge_witness(g, y, d.r[i]);
            if (mw.kind == MixedEdgeWitness::Kind::Mixed)
                return P5Witness{{d.u, d.v, y, mw.a, mw.b}};
            if (mw.kind == MixedEdgeWitness::Kind::Anticomplete)
                throw IntegrityError("cutset_partition: attachment vertex lost its neighbor");
        }
    }

    VertexSet universe(n);
    for (const VertexSet& s : d.yi) universe |= s;
    VertexSet covered(n);
    std::vector<bool> in_cover(d.yi.size(), false);
    while (covered != universe) {
        int best = -1;
        int best_gain = 0;
        for (std::size_t i = 0; i < d.yi.size(); ++i) {
            if (in_cover[i]) continue;
            VertexSet fresh = d.yi[i];
            fresh -= covered;
            const int gain = fresh.count();
            if (gain > best_gain) {
                best_gain = gain;
                best = static_cast<int>(i);
            }
        }
        if (best < 0) throw IntegrityError("cutset_partition: cover stalled");
        in_cover[best] = true;
        covered |= d.yi[best];
    }
    for (std::size_t i = 0; i < d.yi.size(); ++i) {
        if (!in_cover[i]) continue;
        VertexSet others(n);
        for (std::size_t j = 0; j < d.yi.size(); ++j)
            if (in_cover[j] && j != i) others |= d.yi[j];
        if (d.yi[i].is_subset_of(others)) in_cover[i] = false;
    }
    for (std::size_t i = 0; i < d.yi.size(); ++i)
        if (in_cover[i]) d.cover.push_back(static_cast<int>(i));

    for (int i : d.cover) {
        VertexSet priv = d.yi[static_cast<std::size_t>(i)];
        for (int j : d.cover)
            if (j != i) priv -= d.yi[static_cast<std::size_t>(j)];
        if (priv.empty()) throw IntegrityError("cutset_partition: cover member has no private vertex");
        d.reps.push_back(priv.first());
    }

    for (std::size_t i = 0; i < d.cover.size(); ++i) {
        for (std::size_t j = i + 1; j < d.cover.size(); ++j) {
            const int yi_rep = d.reps[i];
            const int yj_rep = d.reps[j];
            if (g.adjacent(yi_rep, yj_rep)) continue;
            const int ri = d.r[static_cast<std::size_t>(d.cover[i])].first();
            const int rj = d.r[static_cast<std::size_t>(d.cover[j])].first();
            return P5Witness{{ri, yi_rep, d.v, yj_rep, rj}};
        }
    }
    if (static_cast<int>(d.cover.size()) + 1 > ctx.w)
        throw IntegrityError("cutset_partition: cover exceeds the clique bound");

    return d;
}

nlohmann::json to_json(const VertexSet& s) {
    nlohmann::json arr = nlohmann::json::array();
    s.for_each([&](int v) { arr.push_back(v); });
    return arr;
}

nlohmann::json to_json(const JointResult& j) {
    nlohmann::json hist = nlohmann::json::array();
    for (const GrowthStep& step : j.history) {
        nlohmann::json h;
        h["c_next"] = to_json(step.c_next);
        h["v"] = step.v;
        h["z"] = to_json(step.z);
        hist.push_back(std::move(h));
    }
    nlohmann::json out;
    out["c"] = to_json(j.c);
    out["history"] = std::move(hist);
    out["omega_c"] = j.omega_c;
    out["y"] = to_json(j.y);
    return out;
}

nlohmann::json to_json(const CliqueSeparation& s) {
    nlohmann::json out;
    out["omega_x_p"] = s.omega_x_p;
    out["omega_x_q"] = s.omega_x_q;
    out["side_p"] = to_json(s.side_p);
    out["side_q"] = to_json(s.side_q);
    out["x"] = to_json(s.x);
    out["x_p"] = to_json(s.x_p);
    out["x_q"] = to_json(s.x_q);
    return out;
}

nlohmann::json to_json(const CutsetDecomposition& d) {
    nlohmann::json rs = nlohmann::json::array();
    for (const VertexSet& s : d.r) rs.push_back(to_json(s));
    nlohmann::json ys = nlohmann::json::array();
    for (const VertexSet& s : d.yi) ys.push_back(to_json(s));
    nlohmann::json out;
    out["cover"] = d.cover;
    out["n"] = to_json(d.n);
    out["r"] = std::move(rs);
    out["reps"] = d.reps;
    out["s"] = to_json(d.s);
    out["u"] = d.u;
    out["v"] = d.v;
    out["yi"] = std::move(ys);
    return out;
}

}  // namespace p5
