#include "faultshield/recomp.hpp"

#include <stdexcept>
#include <string>

namespace faultshield {

const char* scheme_name(Scheme s) {
  switch (s) {
    case Scheme::Reswo: return "reswo";
    case Scheme::Reno: return "reno";
    case Scheme::Reso: return "reso";
  }
  return "?";
}

std::optional<Scheme> parse_scheme(std::string_view name) {
  if (name == "reswo") return Scheme::Reswo;
  if (name == "reno") return Scheme::Reno;
  if (name == "reso") return Scheme::Reso;
  return std::nullopt;
}

unsigned swap_pair_count(unsigned w) { return w * (w - 1) / 2; }

SwapChoice swap_pair_at(unsigned idx, unsigned w) {
  if (w < 2) throw std::invalid_argument("swap pairs need w >= 2");
  if (idx >= swap_pair_count(w))
    throw std::invalid_argument("pair index " + std::to_string(idx) +
                                " out of range for w=" + std::to_string(w));
  // Walk the lexicographic enumeration (0,1), (0,2), ..., (w-2, w-1).
  unsigned i = 0, run = w - 1;
  while (idx >= run) {
    idx -= run;
    --run;
    ++i;
  }
  return {i, i + 1 + idx};
}

namespace {

void check_choice(SwapChoice c, unsigned w) {
  if (c.i_prime >= w || c.j_prime >= w)
    throw std::invalid_argument("swap position out of range for w=" +
                                std::to_string(w));
  if (c.i_prime == c.j_prime)
    throw std::invalid_argument("swap positions must differ");
}

void check_word(u32 word, unsigned w, const char* name) {
  if (w < 64 && (word >> w) != 0)
    throw std::invalid_argument(std::string(name) + " out of range: must be < 2^w");
}

}  // namespace

u32 swap_bits(u32 word, SwapChoice c, unsigned w) {
  check_choice(c, w);
  u32 bi = (word >> c.i_prime) & 1u;
  u32 bj = (word >> c.j_prime) & 1u;
  u32 out = word & ~((1u << c.i_prime) | (1u << c.j_prime));
  out |= bj << c.i_prime;
  out |= bi << c.j_prime;
  return out;
}

SwapDelta swap_delta(u32 word, SwapChoice c, unsigned w) {
  check_choice(c, w);
  int bi = (word >> c.i_prime) & 1;
  int bj = (word >> c.j_prime) & 1;
  SwapDelta d;
  d.delta = bi - bj;
  d.weighted = static_cast<i64>(d.delta) *
               ((i64{1} << c.i_prime) - (i64{1} << c.j_prime));
  return d;
}

bool compare_flag(u64 r, u64 r_f) { return r != r_f; }

u64 reswo_remainder(u32 aw, u32 bw, unsigned i, unsigned j, SwapChoice c,
                    const Params& p) {
  check_word(aw, p.w, "aw");
  check_word(bw, p.w, "bw");
  if (i >= p.num_words || j >= p.num_words)
    throw std::invalid_argument("word index out of range");
  u32 swapped = swap_bits(aw, c, p.w);
  SwapDelta d = swap_delta(aw, c, p.w);
  // swapped + weighted == aw, so this equals aw*bw without ever forming it.
  i64 prod = static_cast<i64>(swapped) * bw + d.weighted * static_cast<i64>(bw);
  u128 c_f = static_cast<u128>(static_cast<u64>(prod)) << ((i + j) * p.w);
  u64 qhat = static_cast<u64>((c_f * p.mu) >> p.k);
  return static_cast<u64>(c_f) - qhat * p.q;
}

u64 reno_remainder(u32 aw, u32 bw, unsigned i, unsigned j, const Params& p) {
  check_word(aw, p.w, "aw");
  check_word(bw, p.w, "bw");
  if (i >= p.num_words || j >= p.num_words)
    throw std::invalid_argument("word index out of range");
  // Negated operand through the signed multiplier, pad by signed shift,
  // then the exit negation recovers the positive padded product.
  i64 neg_prod = -(static_cast<i64>(aw) * static_cast<i64>(bw));
  i128 c_f = static_cast<i128>(neg_prod) << ((i + j) * p.w);
  u128 c_hat = static_cast<u128>(-c_f);
  u64 qhat = static_cast<u64>((c_hat * p.mu) >> p.k);
  return static_cast<u64>(c_hat) - qhat * p.q;
}

u64 reso_remainder(u32 aw, u32 bw, unsigned i, unsigned j, const Params& p,
                   ResoMode mode) {
  check_word(aw, p.w, "aw");
  check_word(bw, p.w, "bw");
  if (i >= p.num_words || j >= p.num_words)
    throw std::invalid_argument("word index out of range");
  u64 a2 = static_cast<u64>(aw) << 1;
  u64 b2 = static_cast<u64>(bw) << 1;
  u128 c_f = (static_cast<u128>(a2) * b2) << ((i + j) * p.w);  // 4 * aw*bw * 2^(i+j)w
  // Slicing two bits higher cancels the factor 4 inside the estimate, so
  // qhat here equals the main path's quotient estimate exactly.
  u64 qhat = static_cast<u64>((c_f * p.mu) >> (p.k + 2));
  if (mode == ResoMode::Consistent) {
    u128 t = c_f - static_cast<u128>(qhat) * (static_cast<u128>(p.q) << 2);
    assert(t == static_cast<u128>(static_cast<u64>(t)) && (t & 3) == 0);
    return static_cast<u64>(t >> 2);
  }
  // Literal: subtract q unscaled, then shift; not congruence-preserving.
  u128 t = c_f - static_cast<u128>(qhat) * p.q;
  return static_cast<u64>(t >> 2);
}

}  // namespace faultshield
