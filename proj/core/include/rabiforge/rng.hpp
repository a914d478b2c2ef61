// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <random>

namespace rabiforge {

/// All randomness in the library flows through explicitly seeded 64-bit
/// generators so that every sampled quantity is bit-reproducible.
using Rng = std::mt19937_64;

/// Uniform double in [0, 1) built from the top 53 bits of the generator.
/// std::uniform_real_distribution is implementation-defined; this is not.
inline double uniform01(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// One Bernoulli(p) trial.
inline bool bernoulli(Rng& rng, double p) {
    return uniform01(rng) < p;
}

/// splitmix64 mix, used to derive independent per-step/per-call seeds from a
/// single run seed without correlated streams.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace rabiforge
