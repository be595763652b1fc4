#pragma once

#include <optional>
#include <string_view>

#include "faultshield/barrett.hpp"

namespace faultshield {

enum class Scheme { Reswo, Reno, Reso };

const char* scheme_name(Scheme s);
std::optional<Scheme> parse_scheme(std::string_view name);

// One algebraically inconsistent step of the shifted-operand datapath is
// kept selectable: `Consistent` scales the subtracted modulus so the final
// right shift lands exactly on the main-path remainder; `Literal` keeps the
// unscaled subtraction as written and reports the result as-is.
enum class ResoMode { Consistent, Literal };

// Unordered pair of bit positions inside one w-bit word, i_prime != j_prime.
struct SwapChoice {
  unsigned i_prime = 0;
  unsigned j_prime = 1;
};

// delta = bit_{i'}(word) - bit_{j'}(word) in {-1, 0, +1};
// weighted = delta * (2^i' - 2^j'), so swap_bits(word) + weighted == word.
struct SwapDelta {
  int delta = 0;
  i64 weighted = 0;
};

unsigned swap_pair_count(unsigned w);  // C(w, 2)
// idx-th unordered pair in lexicographic order (0,1), (0,2), ..., (w-2,w-1).
SwapChoice swap_pair_at(unsigned idx, unsigned w);

u32 swap_bits(u32 word, SwapChoice c, unsigned w);
SwapDelta swap_delta(u32 word, SwapChoice c, unsigned w);

bool compare_flag(u64 r, u64 r_f);  // true iff the two remainders differ

// The three recomputation datapaths.  Each takes the word pair (aw, bw) and
// word indices (i, j), rebuilds the padded product c_f = aw*bw*2^((i+j)w)
// through its own rewritten arithmetic, and applies the quotient slice and
// subtraction.  Fault-free, each returns exactly
// barrett_step(aw*bw << (i+j)w).

// Swapped-operand path: multiplies with bits i', j' of aw exchanged and adds
// the weighted-difference correction (swapped + weighted == aw) times bw.
u64 reswo_remainder(u32 aw, u32 bw, unsigned i, unsigned j, SwapChoice c,
                    const Params& p);

// Negated-operand path: multiplies (-aw) by bw in signed arithmetic, pads by
// a signed left shift, then the exit negation recovers the positive product
// before the quotient slice is taken.
u64 reno_remainder(u32 aw, u32 bw, unsigned i, unsigned j, const Params& p);

// Shifted-operand path: both operands left-shifted one bit (product carries
// factor 4), quotient slice taken at bits [2k+1 .. k+2], final result
// right-shifted two bits.
u64 reso_remainder(u32 aw, u32 bw, unsigned i, unsigned j, const Params& p,
                   ResoMode mode = ResoMode::Consistent);

}  // namespace faultshield
