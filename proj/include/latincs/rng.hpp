#pragma once

// Seedable generator with per-index substreams.
//
// The engine is std::mt19937_64, whose output sequence is fixed by the
// standard. Seeds for substreams are derived with the SplitMix64 finalizer
// over (seed, stream index). Bounded integers and shuffles are done here
// rather than through <random> distributions, whose output is
// implementation-defined, so results are identical across standard libraries.

#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace latincs {

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

    /// Independent generator for trial `index` of a run seeded with `seed`.
    static Rng substream(std::uint64_t seed, std::uint64_t index) {
        return Rng(splitmix64(seed) ^ splitmix64(~index));
    }

    std::uint64_t next() { return engine_(); }

    /// Uniform integer in [0, bound), by rejection. bound must be positive.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return x % bound;
    }

    /// Fisher-Yates.
    template <typename T>
    void shuffle(std::span<T> items) {
        for (std::size_t i = items.size(); i > 1; --i) {
            const std::size_t j = static_cast<std::size_t>(below(i));
            std::swap(items[i - 1], items[j]);
        }
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace latincs
