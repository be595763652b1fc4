#pragma once

#include "faultshield/mbrfd.hpp"

namespace faultshield {

using Poly = std::vector<u64>;

u64 pow_mod(u64 base, u64 exp, u64 q);
bool is_prime(u64 x);

// Reversal of the low `bits` bits of x.
u32 bit_reverse_index(u32 x, unsigned bits);

// Smallest psi >= 2 of multiplicative order exactly 2n modulo q.
// Requires power-of-two n and prime q with q == 1 (mod 2n); throws with a
// message naming the violated constraint otherwise.
u64 find_psi(u32 n, u64 q);

// Powers of psi arranged so that pass m, block i of the iterative transform
// reads its root at omega[m + i].  omega[s] = psi^bit_reverse(s, log2 n).
struct TwiddleTable {
  u32 n = 0;
  u64 q = 0;
  u64 psi = 0;
  std::vector<u64> omega;
};

TwiddleTable gen_twiddles(u32 n, u64 q);

// One butterfly leaves three ordered records: operand fetch (stage 1, the
// two loaded coefficients), multiply (stage 2, the reduced product V and the
// recomputation comparator's verdict), add/sub (stage 3, the two outputs).
struct StageRecord {
  unsigned stage = 0;  // 1 | 2 | 3
  u32 m = 0;           // pass block count
  u32 i = 0;           // twiddle index within the pass
  u32 j = 0;           // coefficient position
  u64 u = 0;
  u64 v = 0;
  bool fault_flag = false;  // stage 2 only: dual-path disagreement
};

struct NttResult {
  Poly coeffs;
  u64 fault_count = 0;  // butterflies whose dual paths disagreed
  std::vector<StageRecord> trace;  // 3 * (n/2) * log2(n) records when traced
};

// Iterative decimation-in-time transform with every twiddle multiplication
// routed through the dual-path word-loop reduction (canonical accumulation).
// Butterfly: a[j] <- (U + V) mod q, a[j+t] <- (U - V) mod q with
// V = reduce(a[j+t] * omega[m+i]).
NttResult ntt_forward(const Poly& poly, const TwiddleTable& table,
                      const Params& p, Scheme s, bool record_trace = false);

// Same loop with the plain wide-multiplication oracle in place of the
// dual-path reduction; no detection, no quotient estimation.
Poly ntt_reference(const Poly& poly, const TwiddleTable& table, u64 q);

}  // namespace faultshield
