#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "p5/oracles.hpp"
#include "support/brute.hpp"

using namespace p5;

TEST_CASE("max_clique on named graphs") {
    CHECK(max_clique(brute::complete(5)).size == 5);
    CHECK(max_clique(brute::cycle(5)).size == 2);
    CHECK(max_clique(brute::petersen()).size == 2);
    CHECK(max_clique(Graph(4)).size == 1);
    CHECK(max_clique(Graph(0)).size == 0);
    CHECK(max_clique(Graph(1)).size == 1);
    Graph k12e(12);
    for (auto [u, v] : brute::complete(12).edges())
        if (!(u == 0 && v == 1)) k12e.add_edge(u, v);
    CHECK(max_clique(k12e).size == 11);
}

TEST_CASE("max_clique result is a clique of the reported size") {
    Rng rng(101);
    for (int trial = 0; trial < 300; ++trial) {
        Graph g = brute::gnp(12, 0.5, rng);
        Clique q = max_clique(g);
        CHECK(q.vertices.count() == q.size);
        auto vs = q.vertices.to_vector();
        for (std::size_t i = 0; i < vs.size(); ++i)
            for (std::size_t j = i + 1; j < vs.size(); ++j) CHECK(g.adjacent(vs[i], vs[j]));
        CHECK(q.size == brute::max_clique_size(g));
    }
}

TEST_CASE("find_induced_p5 on named graphs") {
    Graph p5 = brute::path(5);
    auto w = find_induced_p5(p5);
    REQUIRE(w.has_value());
    CHECK(w->validate(p5));

    CHECK_FALSE(find_induced_p5(brute::cycle(5)).has_value());
    CHECK_FALSE(find_induced_p5(brute::complete(6)).has_value());
    CHECK_FALSE(find_induced_p5(Graph(7)).has_value());

    Graph pet = brute::petersen();
    auto wp = find_induced_p5(pet);
    REQUIRE(wp.has_value());
    CHECK(wp->validate(pet));
    CHECK(brute::has_induced_p5(pet));

    Graph c6 = brute::cycle(6);  // drop any vertex of C6 and a P5 remains
    auto wc = find_induced_p5(c6);
    REQUIRE(wc.has_value());
    CHECK(wc->validate(c6));
    Graph p6 = brute::path(6);
    REQUIRE(find_induced_p5(p6).has_value());
}

TEST_CASE("find_induced_p5 agrees with the naive five-subset scan") {
    Rng rng(211);
    int hits = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        int n = 5 + static_cast<int>(rng.below(6));  // 5..10
        Graph g = brute::gnp(n, 0.25 + 0.05 * static_cast<double>(rng.below(8)), rng);
        auto w = find_induced_p5(g);
        CHECK(w.has_value() == brute::has_induced_p5(g));
        if (w) {
            CHECK(w->validate(g));
            ++hits;
        }
    }
    CHECK(hits > 100);  // the sweep actually exercises both outcomes
}

TEST_CASE("P5Witness::validate rejects non-paths") {
    Graph c5 = brute::cycle(5);
    P5Witness w{{0, 1, 2, 3, 4}};
    CHECK_FALSE(w.validate(c5));  // closing edge 4-0 breaks it
    Graph p5 = brute::path(5);
    CHECK(P5Witness{{0, 1, 2, 3, 4}}.validate(p5));
    CHECK(P5Witness{{4, 3, 2, 1, 0}}.validate(p5));
    CHECK_FALSE(P5Witness{{0, 1, 2, 3, 3}}.validate(p5));
    CHECK_FALSE(P5Witness{{0, 2, 1, 3, 4}}.validate(p5));
}

TEST_CASE("dsatur on named graphs") {
    CHECK(dsatur(brute::complete(4)).num_colors == 4);
    CHECK(dsatur(brute::cycle(6)).num_colors == 2);
    CHECK(dsatur(brute::cycle(5)).num_colors == 3);
    CHECK(dsatur(Graph(0)).num_colors == 0);
    CHECK(dsatur(Graph(5)).num_colors == 1);
}

TEST_CASE("dsatur is proper and bounded by max degree plus one") {
    Rng rng(307);
    for (int trial = 0; trial < 300; ++trial) {
        int n = static_cast<int>(rng.below(15));
        Graph g = brute::gnp(n, 0.4, rng);
        Coloring c = dsatur(g);
        CHECK(c.proper(g));
        int maxdeg = 0;
        for (int v = 0; v < n; ++v) maxdeg = std::max(maxdeg, g.degree(v));
        if (n > 0) CHECK(c.num_colors <= maxdeg + 1);
    }
}

TEST_CASE("color_at_most decides k-colorability") {
    Graph c5 = brute::cycle(5);
    CHECK_FALSE(color_at_most(c5, 2).has_value());
    auto c3 = color_at_most(c5, 3);
    REQUIRE(c3.has_value());
    CHECK(c3->proper(c5));
    CHECK(c3->num_colors <= 3);
    auto cn = color_at_most(c5, 5);
    REQUIRE(cn.has_value());
    CHECK(cn->proper(c5));
    CHECK_FALSE(color_at_most(brute::complete(6), 5).has_value());
    CHECK(color_at_most(Graph(0), 0).has_value());
    CHECK_FALSE(color_at_most(Graph(1), 0).has_value());
}

TEST_CASE("color_at_most agrees with the naive backtracker") {
    Rng rng(401);
    for (int trial = 0; trial < 400; ++trial) {
        int n = 1 + static_cast<int>(rng.below(9));
        Graph g = brute::gnp(n, 0.5, rng);
        int k = static_cast<int>(rng.below(5));
        auto c = color_at_most(g, k);
        CHECK(c.has_value() == brute::k_colorable(g, k));
        if (c) {
            CHECK(c->proper(g));
            CHECK(c->num_colors <= k);
        }
    }
}

TEST_CASE("exact_chromatic on named graphs") {
    CHECK(exact_chromatic(brute::cycle(5)).chi == 3);
    CHECK(exact_chromatic(brute::complete(4)).chi == 4);
    CHECK(exact_chromatic(brute::petersen()).chi == 3);
    CHECK(exact_chromatic(Graph(0)).chi == 0);
    CHECK(exact_chromatic(Graph(6)).chi == 1);
    CHECK(exact_chromatic(brute::cycle(6)).chi == 2);
}

TEST_CASE("exact_chromatic agrees with the naive search and its witness is tight") {
    Rng rng(503);
    for (int trial = 0; trial < 250; ++trial) {
        int n = 1 + static_cast<int>(rng.below(9));
        Graph g = brute::gnp(n, 0.45, rng);
        ChromaticResult r = exact_chromatic(g);
        CHECK(r.chi == brute::chromatic(g));
        CHECK(r.coloring.proper(g));
        CHECK(r.coloring.num_colors == r.chi);
        CHECK(r.chi >= max_clique(g).size);
    }
}

TEST_CASE("split graphs are perfect: chi equals omega") {
    Rng rng(601);
    for (int trial = 0; trial < 100; ++trial) {
        int k = 1 + static_cast<int>(rng.below(5));
        int s = static_cast<int>(rng.below(5));
        std::vector<std::pair<int, int>> e;
        for (int i = 0; i < k; ++i)
            for (int j = i + 1; j < k; ++j) e.emplace_back(i, j);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < s; ++j)
                if (rng.chance(0.4)) e.emplace_back(i, k + j);
        Graph g = Graph::from_edge_list(k + s, e);
        CHECK(exact_chromatic(g).chi == max_clique(g).size);
    }
}

TEST_CASE("oracle budget is enforced") {
    Rng rng(701);
    Graph g = brute::gnp(30, 0.9, rng);
    OracleLimits tiny{3};
    CHECK_THROWS_AS(max_clique(g, tiny), OracleBudgetError);
}
