#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace p5 {

// Word-packed vertex set over a fixed universe {0..n-1}. All set algebra is
// word-parallel; this is what makes the exact oracles usable at desk scale.
class VertexSet {
public:
    VertexSet() : nbits_(0) {}
    explicit VertexSet(int nbits)
        : nbits_(nbits), words_((static_cast<std::size_t>(nbits) + 63) / 64, 0) {}

    static VertexSet full(int nbits) {
        VertexSet s(nbits);
        for (auto& w : s.words_) w = ~0ull;
        s.trim();
        return s;
    }

    int universe_size() const { return nbits_; }

    bool test(int i) const { return (words_[i >> 6] >> (i & 63)) & 1; }
    void set(int i) { words_[i >> 6] |= 1ull << (i & 63); }
    void reset(int i) { words_[i >> 6] &= ~(1ull << (i & 63)); }

    bool empty() const {
        for (auto w : words_)
            if (w) return false;
        return true;
    }

    int count() const {
        int c = 0;
        for (auto w : words_) c += std::popcount(w);
        return c;
    }

    // Lowest member, or -1 when empty.
    int first() const {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i]) return static_cast<int>(i * 64 + std::countr_zero(words_[i]));
        return -1;
    }

    // Lowest member > i, or -1.
    int next(int i) const {
        ++i;
        if (i >= nbits_) return -1;
        std::size_t wi = static_cast<std::size_t>(i) >> 6;
        std::uint64_t w = words_[wi] & (~0ull << (i & 63));
        while (true) {
            if (w) return static_cast<int>(wi * 64 + std::countr_zero(w));
            if (++wi >= words_.size()) return -1;
            w = words_[wi];
        }
    }

    VertexSet& operator|=(const VertexSet& o) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
        return *this;
    }
    VertexSet& operator&=(const VertexSet& o) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
        return *this;
    }
    VertexSet& operator-=(const VertexSet& o) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
        return *this;
    }

    friend VertexSet operator|(VertexSet a, const VertexSet& b) { return a |= b; }
    friend VertexSet operator&(VertexSet a, const VertexSet& b) { return a &= b; }
    friend VertexSet operator-(VertexSet a, const VertexSet& b) { return a -= b; }

    bool operator==(const VertexSet& o) const {
        return nbits_ == o.nbits_ && words_ == o.words_;
    }

    bool intersects(const VertexSet& o) const {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & o.words_[i]) return true;
        return false;
    }

    bool is_subset_of(const VertexSet& o) const {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & ~o.words_[i]) return false;
        return true;
    }

    template <typename F>
    void for_each(F f) const {
        for (std::size_t i = 0; i < words_.size(); ++i) {
            std::uint64_t w = words_[i];
            while (w) {
                f(static_cast<int>(i * 64 + std::countr_zero(w)));
                w &= w - 1;
            }
        }
    }

    std::vector<int> to_vector() const {
        std::vector<int> v;
        v.reserve(static_cast<std::size_t>(count()));
        for_each([&](int i) { v.push_back(i); });
        return v;
    }

    static VertexSet of(int nbits, std::initializer_list<int> members) {
        VertexSet s(nbits);
        for (int i : members) s.set(i);
        return s;
    }

private:
    void trim() {
        if (!words_.empty() && (nbits_ & 63))
            words_.back() &= (~0ull >> (64 - (nbits_ & 63)));
    }

    int nbits_;
    std::vector<std::uint64_t> words_;
};

}  // namespace p5
