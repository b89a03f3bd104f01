#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>

#include "p5/graph6.hpp"
#include "support/brute.hpp"

using namespace p5;

// Reference strings frozen from an independent graph6 implementation.
namespace {
const char* kK4 = "C~";
const char* kC5 = "Dhc";
const char* kP5 = "DhC";
const char* kPetersen = "IheA@GUAo";
const char* kEmpty3 = "B?";
const char* kK1 = "@";
const char* kK0 = "?";
const char* kStar13 = "Cs";
const char* kK7 = "F~~~w";
const char* kK12MinusEdge = "K^~~~~~~~~~~";
}  // namespace

TEST_CASE("decode frozen reference strings") {
    Graph k4 = graph6_decode(kK4);
    CHECK(k4.size() == 4);
    CHECK(k4.edge_count() == 6);

    Graph c5 = graph6_decode(kC5);
    CHECK(c5.size() == 5);
    CHECK(c5.edges() == brute::cycle(5).edges());

    Graph p5 = graph6_decode(kP5);
    CHECK(p5.edges() == brute::path(5).edges());

    Graph pet = graph6_decode(kPetersen);
    CHECK(pet.edges() == brute::petersen().edges());

    CHECK(graph6_decode(kEmpty3).size() == 3);
    CHECK(graph6_decode(kEmpty3).edge_count() == 0);
    CHECK(graph6_decode(kK1).size() == 1);
    CHECK(graph6_decode(kK0).size() == 0);

    Graph star = graph6_decode(kStar13);
    CHECK(star.size() == 4);
    CHECK(star.edge_count() == 3);
    CHECK(star.degree(0) == 3);
}

TEST_CASE("encode frozen reference strings") {
    CHECK(graph6_encode(brute::complete(4)) == kK4);
    CHECK(graph6_encode(brute::cycle(5)) == kC5);
    CHECK(graph6_encode(brute::path(5)) == kP5);
    CHECK(graph6_encode(brute::petersen()) == kPetersen);
    CHECK(graph6_encode(Graph(3)) == kEmpty3);
    CHECK(graph6_encode(Graph(1)) == kK1);
    CHECK(graph6_encode(Graph(0)) == kK0);
    CHECK(graph6_encode(brute::complete(7)) == kK7);
    Graph g = brute::complete(12);
    Graph h(12);
    for (auto [u, v] : g.edges())
        if (!(u == 0 && v == 1)) h.add_edge(u, v);
    CHECK(graph6_encode(h) == kK12MinusEdge);
}

TEST_CASE("optional header and trailing newline are accepted") {
    Graph g = graph6_decode(">>graph6<<C~\n");
    CHECK(g.size() == 4);
    CHECK(g.edge_count() == 6);
}

TEST_CASE("long length form at n = 63") {
    Graph p63 = brute::path(63);
    std::string s = graph6_encode(p63);
    REQUIRE(s.size() == 330);
    CHECK(s.substr(0, 4) == "~??~");
    Graph back = graph6_decode(s);
    CHECK(back.edges() == p63.edges());
}

TEST_CASE("round trip on random graphs") {
    Rng rng(7);
    for (int trial = 0; trial < 10000; ++trial) {
        int n = static_cast<int>(rng.below(33));
        double p = static_cast<double>(rng.below(100)) / 100.0;
        Graph g = brute::gnp(n, p, rng);
        Graph back = graph6_decode(graph6_encode(g));
        REQUIRE(back.size() == n);
        REQUIRE(back.edges() == g.edges());
    }
}

TEST_CASE("parse errors carry byte offsets") {
    CHECK_THROWS_AS(graph6_decode(""), Graph6ParseError);
    try {
        graph6_decode("D");  // n=5 needs 10 payload bits
        CHECK(false);
    } catch (const Graph6ParseError& e) {
        CHECK(e.byte_offset == 1);
    }
    try {
        graph6_decode("C~ ");  // stray byte after a complete graph
        CHECK(false);
    } catch (const Graph6ParseError& e) {
        CHECK(e.byte_offset == 2);
    }
    try {
        graph6_decode(std::string(1, static_cast<char>(30)));
        CHECK(false);
    } catch (const Graph6ParseError& e) {
        CHECK(e.byte_offset == 0);
    }
    CHECK_THROWS_AS(graph6_decode("~~~~~~~~"), Graph6ParseError);  // n > 10^6 cap
}

TEST_CASE("read_graph_auto detects both formats") {
    Graph a = read_graph_auto("5 2\n0 1\n2 3\n");
    CHECK(a.size() == 5);
    CHECK(a.edge_count() == 2);
    Graph b = read_graph_auto(kPetersen);
    CHECK(b.edges() == brute::petersen().edges());
}
