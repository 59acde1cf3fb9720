#pragma once

// Reference values computed without the library's Bernoulli table.

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>

#include "finzeta/modring.hpp"

namespace oracle {

using finzeta::u64;

// B_n mod p for even 2 <= n <= p-3, from sum_{k<p} k^n = p B_n (mod p^2).
inline u64 bernoulli(u64 n, u64 p) {
  if (n % 2 == 1 || n < 2 || n + 3 > p) throw std::out_of_range("oracle::bernoulli: n outside [2, p-3] or odd");
  const u64 p2 = p * p;
  u64 s = 0;
  for (u64 k = 1; k < p; ++k) s = finzeta::addmod(s, finzeta::powmod(k, n, p2), p2);
  if (s % p != 0) throw std::logic_error("oracle::bernoulli: power sum not divisible by p");
  return s / p;
}

// B_{p-k}/k mod p for odd k >= 3, and 1 for k = 1.
inline u64 beta(int k, u64 p) {
  if (k == 1) return 1;
  if (k % 2 == 0) return 0;
  const u64 b = bernoulli(p - static_cast<u64>(k), p);
  return finzeta::mulmod(b, finzeta::invmod(static_cast<u64>(k), p), p);
}

// (k^{p-1} - 1)/p mod p with exact integers.
inline u64 fermat_q(unsigned long k, u64 p) {
  mpz_class t;
  mpz_ui_pow_ui(t.get_mpz_t(), k, p - 1);
  t -= 1;
  if (!mpz_divisible_ui_p(t.get_mpz_t(), p)) throw std::logic_error("oracle::fermat_q: not divisible");
  t /= p;
  return mpz_fdiv_ui(t.get_mpz_t(), p);
}

// c * p^a * beta_k mod p^l for a rational c with p-free denominator.
inline u64 scaled_beta(const mpq_class& c, int k, int a, u64 p, int l) {
  finzeta::PrimeContext ctx(p, l);
  if (a >= l) return 0;
  u64 pa = 1;
  for (int i = 0; i < a; ++i) pa *= p;
  // only beta mod p^(l-a) is needed up to the factor p^a; beta lives mod p
  if (a + 1 < l) throw std::invalid_argument("oracle::scaled_beta: beta is only known mod p");
  const u64 m = ctx.modulus();
  return finzeta::mulmod(finzeta::mulmod(ctx.iota(c), beta(k, p), m), pa, m);
}

}  // namespace oracle
