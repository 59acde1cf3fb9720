#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "finzeta/rational.hpp"

namespace finzeta {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

inline constexpr int kMaxSuperbity = 4;
inline constexpr u64 kModulusLimit = u64{1} << 62;

inline u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }
inline u64 addmod(u64 a, u64 b, u64 m) {
  u64 s = a + b;
  return s >= m ? s - m : s;
}
inline u64 submod(u64 a, u64 b, u64 m) { return a >= b ? a - b : a + m - b; }

inline u64 powmod(u64 base, u64 e, u64 m) {
  u64 r = 1 % m;
  base %= m;
  while (e) {
    if (e & 1U) r = mulmod(r, base, m);
    base = mulmod(base, base, m);
    e >>= 1U;
  }
  return r;
}

// Inverse by extended Euclid; throws if gcd(a, m) != 1.
inline u64 invmod(u64 a, u64 m) {
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = static_cast<std::int64_t>(m), new_r = static_cast<std::int64_t>(a % m);
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    std::int64_t tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (r != 1) throw std::domain_error("not invertible modulo " + std::to_string(m));
  return t < 0 ? static_cast<u64>(t + static_cast<std::int64_t>(m)) : static_cast<u64>(t);
}

inline bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline std::vector<u64> primes_in(u64 lo, u64 hi) {
  if (lo < 2 || lo > hi) throw std::invalid_argument("primes_in: need 2 <= lo <= hi");
  std::vector<bool> composite(hi + 1, false);
  std::vector<u64> out;
  for (u64 i = 2; i <= hi; ++i) {
    if (composite[i]) continue;
    if (i >= lo) out.push_back(i);
    for (u64 j = i * i; j <= hi; j += i) composite[j] = true;
  }
  return out;
}

inline std::vector<u64> first_primes(std::size_t count) {
  u64 hi = 32;
  while (true) {
    auto ps = primes_in(2, hi);
    if (ps.size() >= count) {
      ps.resize(count);
      return ps;
    }
    hi *= 2;
  }
}

// Z / p^l Z with a table of inverses of 1..p-1.
class PrimeContext {
 public:
  PrimeContext(u64 p, int superbity) : p_(p), superbity_(superbity) {
    if (superbity < 1 || superbity > kMaxSuperbity)
      throw std::invalid_argument("superbity must be in [1, " + std::to_string(kMaxSuperbity) + "]");
    if (!is_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
    u128 m = 1;
    for (int i = 0; i < superbity; ++i) {
      m *= p;
      if (m >= kModulusLimit) throw std::out_of_range("p^superbity exceeds 2^62");
    }
    modulus_ = static_cast<u64>(m);
    build_inverses();
  }

  [[nodiscard]] u64 p() const { return p_; }
  [[nodiscard]] int superbity() const { return superbity_; }
  [[nodiscard]] u64 modulus() const { return modulus_; }

  // k^{-1} mod p^l for 1 <= k <= p-1.
  [[nodiscard]] u64 inv(u64 k) const { return inv_[k]; }

  // k^{-s} mod p^l.
  [[nodiscard]] u64 inv_pow(u64 k, int s) const { return powmod(inv_[k], static_cast<u64>(s), modulus_); }

  [[nodiscard]] u64 reduce(const Integer& z) const {
    static_assert(sizeof(unsigned long) == sizeof(u64));
    return mpz_fdiv_ui(z.get_mpz_t(), modulus_);
  }

  // iota: 0 if p divides the denominator, otherwise r mod p^l.
  [[nodiscard]] u64 iota(const Rational& r) const {
    if (r == 0) return 0;
    if (mpz_divisible_ui_p(r.get_den_mpz_t(), p_)) return 0;
    return mulmod(reduce(r.get_num()), invmod(reduce(r.get_den()), modulus_), modulus_);
  }

 private:
  void build_inverses() {
    // prefix products, one inversion, then unwind
    const u64 n = p_ - 1;
    inv_.assign(p_, 0);
    std::vector<u64> prefix(p_, 1);
    for (u64 k = 1; k <= n; ++k) prefix[k] = mulmod(prefix[k - 1], k, modulus_);
    u64 acc = invmod(prefix[n], modulus_);
    for (u64 k = n; k >= 1; --k) {
      inv_[k] = mulmod(acc, prefix[k - 1], modulus_);
      acc = mulmod(acc, k, modulus_);
    }
  }

  u64 p_;
  int superbity_;
  u64 modulus_ = 1;
  std::vector<u64> inv_;
};

// A value in Z / p^l Z tied to its context's modulus.
class Residue {
 public:
  Residue() = default;
  Residue(u64 value, u64 modulus) : value_(value % modulus), modulus_(modulus) {}

  [[nodiscard]] u64 value() const { return value_; }
  [[nodiscard]] u64 modulus() const { return modulus_; }

  friend Residue operator+(Residue a, Residue b) { return {addmod(a.value_, b.value_, a.check(b)), a.modulus_}; }
  friend Residue operator-(Residue a, Residue b) { return {submod(a.value_, b.value_, a.check(b)), a.modulus_}; }
  friend Residue operator*(Residue a, Residue b) { return {mulmod(a.value_, b.value_, a.check(b)), a.modulus_}; }
  Residue operator-() const { return {submod(0, value_, modulus_), modulus_}; }
  Residue& operator+=(Residue b) { return *this = *this + b; }
  Residue& operator-=(Residue b) { return *this = *this - b; }
  Residue& operator*=(Residue b) { return *this = *this * b; }
  bool operator==(const Residue&) const = default;

 private:
  [[nodiscard]] u64 check(const Residue& o) const {
    if (modulus_ != o.modulus_) throw std::logic_error("residues with different moduli");
    return modulus_;
  }

  u64 value_ = 0;
  u64 modulus_ = 1;
};

inline Residue iota(const Rational& r, const PrimeContext& ctx) { return {ctx.iota(r), ctx.modulus()}; }

inline std::shared_ptr<const PrimeContext> build_context(u64 p, int superbity) {
  return std::make_shared<const PrimeContext>(p, superbity);
}

}  // namespace finzeta
