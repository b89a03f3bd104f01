#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace p5 {

// Bad user-supplied data (file contents, edge lists, CLI arguments).
struct InputError : std::runtime_error {
    explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

// A caller violated a documented precondition.
struct UsageError : std::logic_error {
    explicit UsageError(const std::string& msg) : std::logic_error(msg) {}
};

// An exact search exceeded its configured node budget.
struct OracleBudgetError : std::runtime_error {
    explicit OracleBudgetError(const std::string& msg) : std::runtime_error(msg) {}
};

// A state the cited theorems rule out; reaching it means a bug, not bad input.
struct IntegrityError : std::logic_error {
    explicit IntegrityError(const std::string& msg) : std::logic_error(msg) {}
};

// Generator could not satisfy its size constraints.
struct GenerationError : std::runtime_error {
    explicit GenerationError(const std::string& msg) : std::runtime_error(msg) {}
};

// splitmix64: tiny deterministic RNG, identical on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // uniform in [0, n), n > 0
    std::uint64_t below(std::uint64_t n) { return next() % n; }

    // uniform in [lo, hi] inclusive
    std::uint64_t range(std::uint64_t lo, std::uint64_t hi) {
        return lo + below(hi - lo + 1);
    }

    // Bernoulli(p) with 53-bit resolution
    bool chance(double p) {
        return (next() >> 11) * 0x1.0p-53 < p;
    }

private:
    std::uint64_t state_;
};

}  // namespace p5
