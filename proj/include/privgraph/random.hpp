#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <vector>

namespace privgraph {

/// splitmix64 finalizer; used to derive child seeds and hash tie-break keys.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Seedable random stream. All sampling helpers are hand-rolled on top of
// mt19937_64 so that a fixed seed reproduces the exact same bits regardless
// of the standard library in use. Deterministic seeding is a testing
// affordance only: real releases must seed from entropy, since predictable
// noise voids the DP guarantee.
class RandomSource {
public:
    explicit RandomSource(std::uint64_t seed) : seed_(seed), gen_(mix64(seed)) {}

    static RandomSource from_entropy() {
        std::random_device rd;
        std::uint64_t s = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
        return RandomSource(s);
    }

    std::uint64_t seed() const { return seed_; }

    std::uint64_t next_u64() { return gen_(); }

    /// Uniform double in [0, 1), 53-bit resolution.
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform double in the open interval (0, 1).
    double uniform_open() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    bool bernoulli(double p) { return uniform01() < p; }

    /// Uniform integer in [0, bound); bound must be >= 1. Unbiased.
    std::uint64_t uniform_below(std::uint64_t bound) {
        const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
        const std::uint64_t limit = max - max % bound;
        std::uint64_t x;
        do {
            x = next_u64();
        } while (x >= limit);
        return x % bound;
    }

    /// Fisher-Yates shuffle (stable across standard libraries).
    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(uniform_below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

    /// Independent child stream. Children derived with distinct salts from
    /// the same parent never share state with the parent or each other.
    RandomSource split(std::uint64_t salt) const {
        return RandomSource(mix64(seed_ ^ mix64(salt ^ 0xd1b54a32d192ed03ULL)));
    }

private:
    std::uint64_t seed_;
    std::mt19937_64 gen_;
};

}  // namespace privgraph
