#pragma once

#include <cstdint>
#include <random>

namespace bekk {

/// SplitMix64 finalizer; used to derive independent stream seeds.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// A seeded random source owned by exactly one caller.
class Stream {
public:
    explicit Stream(std::uint64_t seed) : engine_(mix64(seed)) {}

    /// Stream for replicate `index` of a run seeded with `seed`. Streams for
    /// distinct (seed, index) pairs are independent of scheduling order.
    static Stream derive(std::uint64_t seed, std::uint64_t index) {
        return Stream(mix64(seed) ^ mix64(index + 0x632be59bd9b4e019ULL));
    }

    double normal() { return normal_(engine_); }
    double uniform() { return uniform_(engine_); }
    std::mt19937_64& engine() noexcept { return engine_; }

private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
    std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

}  // namespace bekk
