#include "faultshield/mbrfd.hpp"

#include <stdexcept>
#include <string>

namespace faultshield {

namespace {

void check_operand(u64 v, const Params& p, const char* name) {
  if (v > p.operand_mask())
    throw std::invalid_argument(std::string(name) + " = " + std::to_string(v) +
                                " out of range: operand must be < 2^l = " +
                                std::to_string(u64{1} << p.l));
}

inline void accumulate(u64& rho, u64 r, u64 q, AccumMode mode) {
  if (mode == AccumMode::Corrected) {
    rho = reduce_canonical(rho + r, q);
  } else {
    // Verbatim single-subtraction discipline: compare, subtract at most
    // once.  r == q slips through (stays un-reduced), which is exactly why
    // the corrected mode exists.
    if (r > q) rho += r - q; else rho += r;
    if (rho > q) rho -= q;
  }
}

}  // namespace

MbrfdResult mbrfd_dual(u64 a_main, u64 b_main, u64 a_rec, u64 b_rec,
                       const Params& p, Scheme s, const MbrfdOptions& opts,
                       bool record_trace) {
  check_operand(a_main, p, "alpha");
  check_operand(b_main, p, "beta");
  check_operand(a_rec, p, "alpha (recompute)");
  check_operand(b_rec, p, "beta (recompute)");
  if (s == Scheme::Reswo && p.w < 2)
    throw std::invalid_argument(
        "the swapped-operand scheme needs w >= 2 (two distinct bit positions "
        "in one word)");
  if (opts.fixed_swap) {
    // Surface bad pin configurations here rather than on iteration 1.
    if (p.w >= 2) swap_pair_at(0, p.w);
    SwapChoice c = *opts.fixed_swap;
    if (c.i_prime >= p.w || c.j_prime >= p.w || c.i_prime == c.j_prime)
      throw std::invalid_argument("pinned swap pair invalid for w=" +
                                  std::to_string(p.w));
  }

  MbrfdResult res;
  const unsigned nw = p.num_words;
  const unsigned npairs = (s == Scheme::Reswo) ? swap_pair_count(p.w) : 0;
  if (record_trace) res.iterations.reserve(nw * nw);

  unsigned t = 0;  // iteration counter, drives the swap-pair cycle
  for (unsigned i = 0; i < nw; ++i) {
    const u32 awm = word_at(a_main, i, p);
    const u32 awr = word_at(a_rec, i, p);
    for (unsigned j = 0; j < nw; ++j, ++t) {
      const u32 bwm = word_at(b_main, j, p);
      const u32 bwr = word_at(b_rec, j, p);
      const unsigned pad = (i + j) * p.w;

      const u128 c = static_cast<u128>(static_cast<u64>(awm) * bwm) << pad;
      const u64 r = barrett_step(c, p);

      u64 r_f = 0;
      switch (s) {
        case Scheme::Reswo: {
          SwapChoice ch =
              opts.fixed_swap ? *opts.fixed_swap : swap_pair_at(t % npairs, p.w);
          r_f = reswo_remainder(awr, bwr, i, j, ch, p);
          break;
        }
        case Scheme::Reno:
          r_f = reno_remainder(awr, bwr, i, j, p);
          break;
        case Scheme::Reso:
          r_f = reso_remainder(awr, bwr, i, j, p, opts.reso);
          break;
      }

      const bool flag = compare_flag(r, r_f);
      res.flagged_iterations += flag;
      accumulate(res.rho, r, p.q, opts.accum);
      accumulate(res.rho_f, r_f, p.q, opts.accum);
      if (record_trace) res.iterations.push_back({i, j, c, r, r_f, flag});
    }
  }
  res.aggregate_flag = res.rho != res.rho_f;
  return res;
}

MbrfdResult mbrfd(u64 alpha, u64 beta, const Params& p, Scheme s,
                  const MbrfdOptions& opts, bool record_trace) {
  return mbrfd_dual(alpha, beta, alpha, beta, p, s, opts, record_trace);
}

ReductionTrace mbrfd_trace(u64 alpha, u64 beta, const Params& p, Scheme s,
                           const MbrfdOptions& opts) {
  MbrfdResult res = mbrfd(alpha, beta, p, s, opts, true);
  ReductionTrace tr;
  tr.iterations = std::move(res.iterations);
  tr.rho = res.rho;
  tr.rho_f = res.rho_f;
  tr.aggregate_flag = res.aggregate_flag;
  return tr;
}

}  // namespace faultshield
