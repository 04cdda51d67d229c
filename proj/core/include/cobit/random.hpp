#pragma once

#include "cobit/types.hpp"

#include <cstdint>
#include <random>
#include <string_view>

namespace cobit {

// Stateless 64-bit mixer used to derive independent per-module streams
// from one run seed.
std::uint64_t splitmix64(std::uint64_t x);

// Deterministic substream: one run seed plus a tag and counter yields a
// reproducible engine regardless of what other modules consumed.
std::mt19937_64 substream(std::uint64_t seed, std::string_view tag, std::uint64_t index = 0);

// Haar-distributed unitary via QR of a complex Ginibre matrix with the
// R-diagonal phase normalization.
Mat haar_unitary(int d, std::mt19937_64& rng);

// Uniformly random unit vector in C^d.
Vec haar_vector(int d, std::mt19937_64& rng);

}  // namespace cobit
