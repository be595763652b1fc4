#pragma once

#include <vector>

#include "faultshield/recomp.hpp"

namespace faultshield {

// Accumulation discipline for the word-loop result rho.
//   Corrected: every accumulation step reduces canonically, so the fault-free
//              result equals (alpha * beta) mod q exactly.
//   Literal:   the verbatim single conditional subtraction (compare, subtract
//              at most once per step).  Kept selectable because it fails to
//              reduce r == q (e.g. a word product congruent to 0 can leave
//              rho == q); not used by any table-producing path.
enum class AccumMode { Corrected, Literal };

struct MbrfdOptions {
  AccumMode accum = AccumMode::Corrected;
  ResoMode reso = ResoMode::Consistent;
  // Pin the swapped bit pair instead of cycling through all C(w,2) pairs.
  std::optional<SwapChoice> fixed_swap;
};

// One (i, j) iteration of the dual-path word loop.
struct IterationRecord {
  unsigned i = 0, j = 0;   // alpha / beta word indices
  u128 c = 0;              // padded main-path word product
  u64 r = 0;               // main-path remainder
  u64 r_f = 0;             // recomputation-path remainder
  bool flag = false;       // r != r_f
};

struct ReductionTrace {
  std::vector<IterationRecord> iterations;  // row-major in (i, j)
  u64 rho = 0;                              // accumulated main-path result
  u64 rho_f = 0;                            // accumulated recomputation result
  bool aggregate_flag = false;              // rho != rho_f
};

struct MbrfdResult {
  u64 rho = 0;
  u64 rho_f = 0;
  bool aggregate_flag = false;
  unsigned flagged_iterations = 0;  // count of per-iteration mismatches
  std::vector<IterationRecord> iterations;  // filled only when traced
};

// Word-wise Barrett product reduction with a redundant recomputation path.
// The main path multiplies and reduces the words of (a_main, b_main); the
// recomputation path re-derives every word product from (a_rec, b_rec)
// through the selected scheme's rewritten datapath.  With equal operand
// pairs the two paths agree bit-for-bit; a corruption confined to the main
// path surfaces as rho != rho_f whenever it changes the product mod q.
MbrfdResult mbrfd_dual(u64 a_main, u64 b_main, u64 a_rec, u64 b_rec,
                       const Params& p, Scheme s, const MbrfdOptions& opts = {},
                       bool record_trace = false);

// Fault-free entry point: both paths read the same (alpha, beta).
MbrfdResult mbrfd(u64 alpha, u64 beta, const Params& p, Scheme s,
                  const MbrfdOptions& opts = {}, bool record_trace = false);

// Full per-iteration view of one fault-free run.
ReductionTrace mbrfd_trace(u64 alpha, u64 beta, const Params& p, Scheme s,
                           const MbrfdOptions& opts = {});

}  // namespace faultshield
