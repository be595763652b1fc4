#pragma once

#include <cstdint>
#include <vector>

namespace faultshield {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;
using i128 = __int128;

// Operating point for word-wise Barrett reduction: l-bit operands split into
// w-bit words, reduced modulo q with the precomputed constant
// mu = floor(2^(2l) / q) and slice offset k = 2l.
//
// l is capped at 31 bits: every intermediate in the pipeline (worst case the
// guard-extended product at 2k+4 = 4l+4 bits) must fit unsigned __int128.
struct Params {
  unsigned l = 0;          // operand bit-length
  unsigned w = 0;          // word size in bits, w | l
  unsigned k = 0;          // quotient slice offset, k = 2l
  unsigned num_words = 0;  // l / w
  u64 q = 0;               // modulus, 1 < q < 2^l
  u64 mu = 0;              // floor(2^(2l) / q)
  u32 n = 0;               // polynomial degree (0 = scalar use only)

  u64 operand_mask() const { return (u64{1} << l) - 1; }
  u64 word_mask() const { return (u64{1} << w) - 1; }
};

// Validates the constraint set and freezes the derived constants.
// n = 0 means "no polynomial degree attached"; a nonzero n must be a power
// of two (checked here, consumed by the NTT engine).
Params make_params(unsigned l, unsigned w, u64 q, u32 n = 0);

// Word i = bits [i*w + w - 1 .. i*w] of x.
inline u32 word_at(u64 x, unsigned i, const Params& p) {
  return static_cast<u32>((x >> (i * p.w)) & p.word_mask());
}

// All l/w words of x, least-significant first.
std::vector<u32> split_words(u64 x, const Params& p);

}  // namespace faultshield
