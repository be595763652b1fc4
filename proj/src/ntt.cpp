#include "faultshield/ntt.hpp"

#include <bit>
#include <stdexcept>
#include <string>

namespace faultshield {

u64 pow_mod(u64 base, u64 exp, u64 q) {
  u64 acc = 1 % q;
  u64 b = base % q;
  while (exp) {
    if (exp & 1) acc = static_cast<u64>((static_cast<u128>(acc) * b) % q);
    b = static_cast<u64>((static_cast<u128>(b) * b) % q);
    exp >>= 1;
  }
  return acc;
}

bool is_prime(u64 x) {
  if (x < 2) return false;
  for (u64 d : {2ull, 3ull, 5ull, 7ull}) {
    if (x == d) return true;
    if (x % d == 0) return false;
  }
  for (u64 d = 11; d * d <= x; d += 2)
    if (x % d == 0) return false;
  return true;
}

u32 bit_reverse_index(u32 x, unsigned bits) {
  if (bits < 32 && (x >> bits) != 0)
    throw std::invalid_argument("value " + std::to_string(x) +
                                " exceeds " + std::to_string(bits) + " bits");
  u32 out = 0;
  for (unsigned b = 0; b < bits; ++b) out |= ((x >> b) & 1u) << (bits - 1 - b);
  return out;
}

u64 find_psi(u32 n, u64 q) {
  if (n < 2 || !std::has_single_bit(n))
    throw std::invalid_argument("n must be a power of two >= 2, got " +
                                std::to_string(n));
  if (!is_prime(q))
    throw std::invalid_argument("q must be prime, got " + std::to_string(q));
  const u64 two_n = 2ull * n;
  if ((q - 1) % two_n != 0)
    throw std::invalid_argument(
        "unsupported parameter set: q = " + std::to_string(q) +
        " is not congruent to 1 mod 2n = " + std::to_string(two_n) +
        " (no 2n-th root of unity exists)");
  // For power-of-two order 2n: ord(psi) == 2n  <=>  psi^n == -1 (mod q).
  for (u64 psi = 2; psi < q; ++psi)
    if (pow_mod(psi, n, q) == q - 1) return psi;
  throw std::logic_error("no 2n-th root found despite q == 1 mod 2n");
}

TwiddleTable gen_twiddles(u32 n, u64 q) {
  TwiddleTable tb;
  tb.n = n;
  tb.q = q;
  tb.psi = find_psi(n, q);
  const unsigned logn = static_cast<unsigned>(std::countr_zero(n));
  tb.omega.resize(n);
  for (u32 s = 0; s < n; ++s)
    tb.omega[s] = pow_mod(tb.psi, bit_reverse_index(s, logn), q);
  return tb;
}

namespace {

void check_input(const Poly& poly, const TwiddleTable& table, u64 q) {
  if (table.n == 0 || table.omega.size() != table.n)
    throw std::invalid_argument("twiddle table is empty or inconsistent");
  if (q != table.q)
    throw std::invalid_argument("modulus mismatch: q=" + std::to_string(q) +
                                " vs table q=" + std::to_string(table.q));
  if (poly.size() != table.n)
    throw std::invalid_argument(
        "polynomial length " + std::to_string(poly.size()) +
        " does not match table degree " + std::to_string(table.n));
  for (u64 c : poly)
    if (c >= q)
      throw std::invalid_argument("coefficient " + std::to_string(c) +
                                  " is not canonical (must be < q)");
}

}  // namespace

NttResult ntt_forward(const Poly& poly, const TwiddleTable& table,
                      const Params& p, Scheme s, bool record_trace) {
  check_input(poly, table, p.q);
  if (p.n != 0 && p.n != table.n)
    throw std::invalid_argument("params degree does not match table degree");

  NttResult res;
  res.coeffs = poly;
  Poly& a = res.coeffs;
  const u32 n = table.n;
  const u64 q = p.q;
  if (record_trace) {
    const unsigned logn = static_cast<unsigned>(std::countr_zero(n));
    res.trace.reserve(3ull * (n / 2) * logn);
  }

  u32 t = n / 2;
  for (u32 m = 1; m < n; m <<= 1) {
    u32 base = 0;
    for (u32 i = 0; i < m; ++i) {
      const u64 r = table.omega[m + i];
      for (u32 j = base; j < base + t; ++j) {
        const u64 u = a[j];
        const u64 lower = a[j + t];
        if (record_trace) res.trace.push_back({1, m, i, j, u, lower, false});

        MbrfdResult mr = mbrfd(lower, r, p, s);
        res.fault_count += mr.aggregate_flag;
        const u64 v = mr.rho;
        if (record_trace)
          res.trace.push_back({2, m, i, j, u, v, mr.aggregate_flag});

        u64 sum = u + v;
        if (sum >= q) sum -= q;
        u64 diff = u + q - v;
        if (diff >= q) diff -= q;
        a[j] = sum;
        a[j + t] = diff;
        if (record_trace) res.trace.push_back({3, m, i, j, sum, diff, false});
      }
      base += 2 * t;
    }
    t >>= 1;
  }
  return res;
}

Poly ntt_reference(const Poly& poly, const TwiddleTable& table, u64 q) {
  check_input(poly, table, q);
  Poly a = poly;
  const u32 n = table.n;
  u32 t = n / 2;
  for (u32 m = 1; m < n; m <<= 1) {
    u32 base = 0;
    for (u32 i = 0; i < m; ++i) {
      const u64 r = table.omega[m + i];
      for (u32 j = base; j < base + t; ++j) {
        const u64 u = a[j];
        const u64 v = oracle_modmul(a[j + t], r, q);
        u64 sum = u + v;
        if (sum >= q) sum -= q;
        u64 diff = u + q - v;
        if (diff >= q) diff -= q;
        a[j] = sum;
        a[j + t] = diff;
      }
      base += 2 * t;
    }
    t >>= 1;
  }
  return a;
}

}  // namespace faultshield
