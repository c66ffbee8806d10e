#pragma once

#include <cstdint>
#include <random>

namespace rigidity {

using Rng = std::mt19937_64;

/// SplitMix64 finaliser; used to derive independent stream seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Seed of sub-stream `stream` under a root seed. Streams are fixed by
/// (root, stream) alone, so results do not depend on evaluation order.
constexpr std::uint64_t derive_seed(std::uint64_t root, std::uint64_t stream) noexcept {
    return splitmix64(splitmix64(root) ^ (stream * 0xD1B54A32D192ED03ULL + 1));
}

inline Rng make_rng(std::uint64_t root, std::uint64_t stream) { return Rng(derive_seed(root, stream)); }

}  // namespace rigidity
