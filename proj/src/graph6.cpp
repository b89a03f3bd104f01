#include "p5/graph6.hpp"

#include <cctype>

namespace p5 {

namespace {

constexpr int kBias = 63;
constexpr char kHeader[] = ">>graph6<<";

// Pulls one bit at a time out of the 6-bit payload bytes.
class BitReader {
public:
    BitReader(const std::string& text, std::size_t pos) : text_(text), pos_(pos) {}

    int next_bit() {
        if (shift_ < 0) {
            if (pos_ >= text_.size())
                throw Graph6ParseError("graph6: bit payload truncated", text_.size());
            const unsigned char c = static_cast<unsigned char>(text_[pos_]);
            if (c < kBias || c > kBias + 63)
                throw Graph6ParseError("graph6: byte outside printable range", pos_);
            current_ = c - kBias;
            ++pos_;
            shift_ = 5;
        }
        return (current_ >> shift_--) & 1;
    }

    std::size_t pos() const { return pos_; }

private:
    const std::string& text_;
    std::size_t pos_;
    int current_ = 0;
    int shift_ = -1;
};

}  // namespace

Graph graph6_decode(const std::string& raw) {
    std::string_view sv(raw);
    // Tolerate a trailing newline, as files produced by other tools carry one.
    while (!sv.empty() && (sv.back() == '\n' || sv.back() == '\r')) sv.remove_suffix(1);
    std::size_t base = 0;
    if (sv.substr(0, sizeof(kHeader) - 1) == kHeader) {
        base = sizeof(kHeader) - 1;
        sv.remove_prefix(base);
    }
    const std::string text(sv);

    if (text.empty()) throw Graph6ParseError("graph6: empty input", base);

    auto byte_at = [&](std::size_t i) -> int {
        if (i >= text.size())
            throw Graph6ParseError("graph6: length prefix truncated", base + text.size());
        const unsigned char c = static_cast<unsigned char>(text[i]);
        if (c < kBias || c > 126)
            throw Graph6ParseError("graph6: byte outside printable range", base + i);
        return c - kBias;
    };

    long long n = 0;
    std::size_t pos = 0;
    int b0 = byte_at(0);
    if (b0 < 63) {
        n = b0;
        pos = 1;
    } else if (byte_at(1) < 63) {  // '~' then 3 bytes
        n = (static_cast<long long>(byte_at(1)) << 12) | (byte_at(2) << 6) | byte_at(3);
        pos = 4;
    } else {  // '~~' then 6 bytes
        n = 0;
        for (std::size_t i = 2; i < 8; ++i) n = (n << 6) | byte_at(i);
        pos = 8;
    }
    if (n > 1'000'000)
        throw Graph6ParseError("graph6: vertex count " + std::to_string(n) + " over limit", base);

    Graph g(static_cast<int>(n));
    BitReader bits(text, pos);
    for (int j = 1; j < n; ++j)
        for (int i = 0; i < j; ++i)
            if (bits.next_bit()) g.add_edge(i, j);

    // Exactly ceil(n(n-1)/2 / 6) payload bytes; anything further is garbage.
    if (bits.pos() != text.size())
        throw Graph6ParseError("graph6: trailing bytes after payload", base + bits.pos());
    return g;
}

std::string graph6_encode(const Graph& g) {
    const long long n = g.size();
    std::string out;
    if (n <= 62) {
        out.push_back(static_cast<char>(kBias + n));
    } else if (n <= 258047) {
        out.push_back(126);
        out.push_back(static_cast<char>(kBias + ((n >> 12) & 63)));
        out.push_back(static_cast<char>(kBias + ((n >> 6) & 63)));
        out.push_back(static_cast<char>(kBias + (n & 63)));
    } else {
        out.push_back(126);
        out.push_back(126);
        for (int s = 30; s >= 0; s -= 6)
            out.push_back(static_cast<char>(kBias + ((n >> s) & 63)));
    }

    int acc = 0, nbits = 0;
    for (int j = 1; j < n; ++j) {
        for (int i = 0; i < j; ++i) {
            acc = (acc << 1) | (g.adjacent(i, j) ? 1 : 0);
            if (++nbits == 6) {
                out.push_back(static_cast<char>(kBias + acc));
                acc = 0;
                nbits = 0;
            }
        }
    }
    if (nbits > 0) out.push_back(static_cast<char>(kBias + (acc << (6 - nbits))));
    return out;
}

Graph read_graph_auto(const std::string& text) {
    // An edge-list file starts with an unsigned decimal header "n m".
    std::size_t i = 0;
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i;
    std::size_t d = i;
    while (d < text.size() && std::isdigit(static_cast<unsigned char>(text[d]))) ++d;
    if (d > i && d < text.size() && (text[d] == ' ' || text[d] == '\t')) {
        std::size_t e = d + 1;
        while (e < text.size() && (text[e] == ' ' || text[e] == '\t')) ++e;
        if (e < text.size() && std::isdigit(static_cast<unsigned char>(text[e])))
            return read_edge_list(text);
    }
    return graph6_decode(text);
}

}  // namespace p5
