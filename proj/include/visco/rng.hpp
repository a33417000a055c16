#pragma once

#include <cstdint>

// Counter-based pseudorandom primitives. Every draw is a pure function of
// (seed, realization, stream, counter), so ensembles are order-independent
// and individual members can be regenerated in isolation.

namespace visco::rng {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

struct Key {
    std::uint64_t seed = 0;
    std::uint64_t realization = 0;

    std::uint64_t draw(std::uint64_t stream, std::uint64_t counter) const {
        std::uint64_t h = splitmix64(seed ^ 0x6A09E667F3BCC909ull);
        h = splitmix64(h ^ splitmix64(realization ^ 0xBB67AE8584CAA73Bull));
        h = splitmix64(h ^ splitmix64(stream ^ 0x3C6EF372FE94F82Bull));
        return splitmix64(h ^ counter);
    }

    // Uniform in [0, 1).
    double uniform01(std::uint64_t stream, std::uint64_t counter) const {
        return static_cast<double>(draw(stream, counter) >> 11) * 0x1.0p-53;
    }

    // Uniform index in {0, ..., n-1}.
    std::uint64_t index(std::uint64_t stream, std::uint64_t counter, std::uint64_t n) const {
        return static_cast<std::uint64_t>(uniform01(stream, counter) * static_cast<double>(n)) % n;
    }
};

}  // namespace visco::rng
