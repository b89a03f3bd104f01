#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "p5/common.hpp"
#include "p5/graph.hpp"

namespace p5 {

enum class GeneratorKind { Substitution, Split, Rejection };

// One corpus entry. The same spec always realizes the same graph; the seed is
// part of the spec, not ambient state.
struct GeneratorSpec {
    GeneratorKind kind = GeneratorKind::Rejection;
    std::uint64_t seed = 0;

    // substitution
    int depth = 3;
    int cap = 64;       // realized vertex count above this -> GenerationError
    int omega_cap = 0;  // 0 means unbounded

    // split
    int k = 3;
    int s = 3;
    double density = 0.5;

    // rejection
    int n = 8;
    double p = 0.3;
    int tries = 1000;
};

// "kind,key=value,..." with per-kind keys, e.g.
//   substitution,seed=7,depth=3,cap=60,omega_cap=12
//   split,seed=1,k=4,s=6,density=0.4
//   rejection,seed=2,n=10,p=0.3,tries=500
GeneratorSpec parse_generator_spec(const std::string& text);

// Canonical round-trippable form; parse_generator_spec(to_spec_string(s)) == s.
std::string to_spec_string(const GeneratorSpec& spec);

struct GeneratedGraph {
    Graph graph;
    int expected_omega = 0;
};

// Compositional building blocks, also used directly by tests.
Graph disjoint_union(const std::vector<Graph>& parts);
Graph join_all(const std::vector<Graph>& parts);
// Exactly five parts; parts i and i+1 (mod 5) made complete to each other.
Graph c5_quotient(const std::vector<Graph>& parts);

// Random modular construction: leaves are K1, internal nodes are unions,
// joins, or C5-quotients of recursively built children. expected_omega is
// computed alongside: max for unions, sum for joins, and for quotients the
// max of w_i + w_{i+1 mod 5}.
GeneratedGraph gen_substitution(const GeneratorSpec& spec);

// Clique of size k, stable set of size s, each cross pair kept with the given
// density. omega is k plus one exactly when some stable vertex is complete to
// the clique.
GeneratedGraph gen_split(const GeneratorSpec& spec);

// Samples G(n, p) until an attempt has no induced P5 or tries run out.
// Rejected attempts, each containing an induced P5, land in *rejects.
std::optional<Graph> gen_rejection(const GeneratorSpec& spec,
                                   std::vector<Graph>* rejects = nullptr);

// Kind dispatch. Empty only when a rejection spec exhausts its tries.
std::optional<Graph> generate(const GeneratorSpec& spec);

}  // namespace p5
