#include "faultshield/rng.hpp"

#include <cassert>

namespace faultshield {

std::uint64_t SplitMix64::below(std::uint64_t bound) {
  assert(bound > 0);
  // Rejection from the biased tail: 2^64 mod bound values are re-drawn.
  std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    std::uint64_t x = next();
    if (x >= threshold) return x % bound;
  }
}

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

std::uint64_t derive_key(std::uint64_t seed,
                         std::initializer_list<std::uint64_t> parts) {
  // Order-sensitive fold; the shifts keep permuted coordinate tuples from
  // colliding the way a plain XOR fold would.
  std::uint64_t h = mix64(seed + 0x9E3779B97F4A7C15ull);
  for (std::uint64_t p : parts)
    h = mix64(h ^ (p + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2)));
  return h;
}

}  // namespace faultshield
