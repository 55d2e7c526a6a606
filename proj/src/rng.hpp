#pragma once

#include <cstdint>
#include <random>

namespace ldpcstab {

using Rng = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Independent streams within one run.
enum class Stream : std::uint64_t { pairing = 1, channel = 2, coin = 3, graph = 4, misc = 5 };

// Seed for (master, run index, stream). Counter based: no state is carried
// between runs, so run i is reproducible on its own and in any thread.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t run, Stream s) {
    std::uint64_t h = splitmix64(master);
    h = splitmix64(h ^ (run * 0xD1B54A32D192ED03ULL));
    return splitmix64(h ^ (static_cast<std::uint64_t>(s) * 0x8CB92BA72F3D8DD7ULL));
}

inline Rng make_rng(std::uint64_t master, std::uint64_t run, Stream s) {
    return Rng(derive_seed(master, run, s));
}

inline double uniform01(Rng& rng) {
    return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

inline std::size_t uniform_index(Rng& rng, std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

}  // namespace ldpcstab
