#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

namespace mlpw {

/// splitmix64 finalizer. Used to derive independent seed streams from a master
/// seed and a tuple of stream labels (fold index, pair index, member index, ...)
/// so that adding or removing parallelism never changes any drawn number.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a) {
    return mix64(seed ^ mix64(a));
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
    return derive_seed(derive_seed(seed, a), b);
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b,
                                 std::uint64_t c) {
    return derive_seed(derive_seed(seed, a, b), c);
}

/// Stream labels for the documented seed-derivation scheme. Every consumer of
/// randomness derives its own engine as
///   mt19937_64(derive_seed(master, <tag>, <indices...>)).
enum : std::uint64_t {
    kSeedKfold = 0x6b666f6c64ULL,       // "kfold"
    kSeedSplit = 0x73706c6974ULL,       // "split"
    kSeedPlain = 0x706c61696eULL,       // "plain"
    kSeedCorrected = 0x636f7272ULL,     // "corr"
    kSeedMember = 0x6d656d62ULL,        // "memb"
};

/// Bounded draw in [0, n). Modulo reduction: bias is negligible for the index
/// ranges used here and the mapping stays fixed across platforms.
inline std::size_t draw_index(std::mt19937_64& rng, std::size_t n) {
    return static_cast<std::size_t>(rng() % static_cast<std::uint64_t>(n));
}

/// Fisher-Yates permutation of 0..n-1, fully determined by the engine state.
inline std::vector<std::size_t> shuffled_indices(std::size_t n, std::mt19937_64& rng) {
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    for (std::size_t i = n; i > 1; --i) {
        std::size_t j = draw_index(rng, i);
        std::swap(idx[i - 1], idx[j]);
    }
    return idx;
}

/// k distinct values from 0..n-1, sorted ascending.
inline std::vector<std::size_t> sample_without_replacement(std::size_t n, std::size_t k,
                                                           std::mt19937_64& rng) {
    std::vector<std::size_t> idx = shuffled_indices(n, rng);
    idx.resize(k);
    std::sort(idx.begin(), idx.end());
    return idx;
}

}  // namespace mlpw
