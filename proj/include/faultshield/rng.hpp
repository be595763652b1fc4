#pragma once

#include <cstdint>
#include <initializer_list>

namespace faultshield {

// splitmix64: a 64-bit Weyl sequence pushed through an avalanching
// finalizer.  Chosen because it is trivially seedable per trial (no warm-up,
// no stream coupling) and bit-reproducible on every platform, which the
// campaign determinism contract depends on.
struct SplitMix64 {
  std::uint64_t state = 0;

  explicit SplitMix64(std::uint64_t seed = 0) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Uniform draw from [0, bound) by rejection — no modulo bias.
  std::uint64_t below(std::uint64_t bound);
};

// The splitmix64 finalizer alone (a 64-bit mixing bijection).
std::uint64_t mix64(std::uint64_t z);

// Folds an ordered tuple of coordinates into one stream key.  Used to give
// every Monte-Carlo trial its own statistically independent generator:
// key = derive_key(master_seed, {cell coordinates..., trial index}).
std::uint64_t derive_key(std::uint64_t seed,
                         std::initializer_list<std::uint64_t> parts);

}  // namespace faultshield
