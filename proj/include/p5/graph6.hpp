#pragma once

#include <string>

#include "p5/graph.hpp"

namespace p5 {

// graph6 text encoding (McKay): N(n) prefix, then the upper triangle packed
// column by column, 6 bits per printable byte offset by 63. The optional
// ">>graph6<<" header is accepted on decode and never emitted.
Graph graph6_decode(const std::string& text);
std::string graph6_encode(const Graph& g);

// Parse failures report the byte offset of the offending character.
struct Graph6ParseError : InputError {
    Graph6ParseError(const std::string& msg, std::size_t offset)
        : InputError(msg + " (byte " + std::to_string(offset) + ")"), byte_offset(offset) {}
    std::size_t byte_offset;
};

// Auto-detect edge-list vs graph6 content and parse accordingly.
Graph read_graph_auto(const std::string& text);

}  // namespace p5
