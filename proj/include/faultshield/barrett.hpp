#pragma once

#include <cassert>

#include "faultshield/params.hpp"

namespace faultshield {

// One slice-and-subtract reduction: r = c - floor(c*mu / 2^k) * q for
// c < 2^k.  The quotient estimate undershoots floor(c/q) by at most 2,
// so r == c (mod q) with 0 <= r <= c and r < 3q.
inline u64 barrett_step(u128 c, const Params& p) {
  assert(p.k < 128 && (c >> p.k) == 0);
  u64 qhat = static_cast<u64>((c * p.mu) >> p.k);
  return static_cast<u64>(c) - qhat * p.q;
}

// Repeated conditional subtraction down to [0, q).  Barrett leaves r < 3q,
// so at most two iterations on that path; kept general for other callers.
inline u64 reduce_canonical(u64 r, u64 q) {
  assert(q > 1);
  while (r >= q) r -= q;
  return r;
}

// Full-width (a*b) mod q with no estimation — the reference result every
// reduction path is checked against.
inline u64 oracle_modmul(u64 a, u64 b, u64 q) {
  assert(q > 1);
  return static_cast<u64>((static_cast<u128>(a) * b) % q);
}

}  // namespace faultshield
