#pragma once

#include <cstdint>
#include <vector>

namespace textchef {

// Identifier recorded in every generated spec file. Changing the generator
// algorithm means a new id, never a silent change under the same one.
inline constexpr const char* kRngAlgorithmId = "splitmix64-v1";

/// Deterministic, platform-independent 64-bit generator (splitmix64).
/// Same seed -> same sequence on every platform and build.
struct SplitMix64 {
    uint64_t state = 0;

    explicit SplitMix64(uint64_t seed) : state(seed) {}

    uint64_t next() {
        uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Bounded draw. Modulo bias is negligible for the small bounds used here
    // and keeps the sequence trivially reproducible.
    uint64_t below(uint64_t bound) { return bound == 0 ? 0 : next() % bound; }

    std::size_t index(std::size_t size) { return static_cast<std::size_t>(below(size)); }

    template <typename T>
    const T& pick(const std::vector<T>& pool) {
        return pool[index(pool.size())];
    }

    // Fisher-Yates, high-to-low, using this stream.
    template <typename T>
    void shuffle(std::vector<T>& values) {
        for (std::size_t i = values.size(); i > 1; --i) {
            std::size_t j = index(i);
            std::swap(values[i - 1], values[j]);
        }
    }
};

}  // namespace textchef
