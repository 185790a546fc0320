// ============================================================================
// rng.hpp -- seeded random streams
//
// Every trial owns an independent mt19937_64 stream. The stream seed is
// splitmix64(master_seed + (stream + 1) * 0x9E3779B97F4A7C15), so results do
// not depend on which worker runs which trial.
// ============================================================================
#pragma once
#include <cstdint>
#include <random>

namespace byzfuse {

using Rng = std::mt19937_64;

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t stream_seed(std::uint64_t master, std::uint64_t stream) noexcept {
  return splitmix64(master + (stream + 1) * 0x9E3779B97F4A7C15ULL);
}

inline Rng make_stream(std::uint64_t master, std::uint64_t stream) {
  return Rng(stream_seed(master, stream));
}

}  // namespace byzfuse
