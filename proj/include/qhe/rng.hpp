#pragma once

#include <cstdint>
#include <random>

namespace qhe {

// Every randomized routine takes this engine by reference so that key
// generation and encryption are reproducible from a seed.
using Rng = std::mt19937_64;

inline Rng make_rng(std::uint64_t seed) { return Rng{seed}; }

}  // namespace qhe
