#include "faultshield/params.hpp"

#include <stdexcept>
#include <string>

namespace faultshield {

namespace {

bool is_pow2(u64 x) { return x != 0 && (x & (x - 1)) == 0; }

}  // namespace

Params make_params(unsigned l, unsigned w, u64 q, u32 n) {
  if (l < 1 || l > 31)
    throw std::invalid_argument("l must be in [1, 31], got " +
                                std::to_string(l));
  if (w < 1 || w > l)
    throw std::invalid_argument("w must be in [1, l], got w=" +
                                std::to_string(w) + " with l=" +
                                std::to_string(l));
  if (l % w != 0)
    throw std::invalid_argument("w must divide l (w=" + std::to_string(w) +
                                ", l=" + std::to_string(l) + ")");
  if (q <= 1)
    throw std::invalid_argument("q must exceed 1, got " + std::to_string(q));
  if (q >= (u64{1} << l))
    throw std::invalid_argument("q must be below 2^l = " +
                                std::to_string(u64{1} << l) + ", got " +
                                std::to_string(q));
  if (n != 0 && !is_pow2(n))
    throw std::invalid_argument("n must be a power of two, got " +
                                std::to_string(n));

  Params p;
  p.l = l;
  p.w = w;
  p.k = 2 * l;
  p.num_words = l / w;
  p.q = q;
  p.mu = static_cast<u64>((u128{1} << p.k) / q);
  p.n = n;
  return p;
}

std::vector<u32> split_words(u64 x, const Params& p) {
  if (x > p.operand_mask())
    throw std::invalid_argument("value " + std::to_string(x) +
                                " out of range: must be < 2^l = " +
                                std::to_string(u64{1} << p.l));
  std::vector<u32> words(p.num_words);
  for (unsigned i = 0; i < p.num_words; ++i) words[i] = word_at(x, i, p);
  return words;
}

}  // namespace faultshield
