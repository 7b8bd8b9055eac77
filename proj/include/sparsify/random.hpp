#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace sparsify {

// splitmix64 finalizer.
inline uint64_t mix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Derives an independent-looking stream key from a seed and labels, e.g.
// (seed, node id, round).
inline uint64_t derive_seed(uint64_t seed, std::initializer_list<uint64_t> labels) {
  uint64_t h = mix64(seed);
  for (uint64_t label : labels) h = mix64(h ^ mix64(label + 0x632be59bd9b4e019ULL));
  return h;
}

// Uniform double in [0, 1) from a 64-bit key.
inline double unit_interval(uint64_t key) {
  return static_cast<double>(key >> 11) * 0x1.0p-53;
}

using Rng = std::mt19937_64;

}  // namespace sparsify
