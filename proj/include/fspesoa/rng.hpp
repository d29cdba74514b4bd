#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

namespace fspesoa {

// All randomness in the library goes through these helpers on top of
// std::mt19937_64, whose output sequence is fixed by the standard.
// std::uniform_int_distribution and std::shuffle are implementation-defined,
// so they are deliberately not used anywhere results must reproduce.

/// splitmix64 finalizer; derives an independent stream seed from (seed, stream).
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Unbiased draw from {0, ..., n-1} via rejection sampling.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("uniform_below: n must be positive");
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t draw;
    do {
        draw = rng();
    } while (draw >= limit);
    return draw % n;
}

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform_unit(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Fisher-Yates shuffle driven by uniform_below.
template <typename T>
void shuffle(std::vector<T>& items, std::mt19937_64& rng) {
    for (std::size_t i = items.size(); i > 1; --i) {
        std::swap(items[i - 1], items[uniform_below(rng, i)]);
    }
}

/// k indices from {0, ..., n-1}; without replacement requires k <= n.
inline std::vector<std::size_t> sample_indices(std::size_t n, std::size_t k,
                                               bool with_replacement, std::mt19937_64& rng) {
    std::vector<std::size_t> out;
    out.reserve(k);
    if (with_replacement) {
        for (std::size_t i = 0; i < k; ++i) out.push_back(uniform_below(rng, n));
        return out;
    }
    if (k > n) throw std::invalid_argument("sample_indices: k > n without replacement");
    std::vector<std::size_t> pool(n);
    for (std::size_t i = 0; i < n; ++i) pool[i] = i;
    shuffle(pool, rng);
    out.assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(k));
    return out;
}

}  // namespace fspesoa
