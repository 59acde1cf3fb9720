#pragma once

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "finzeta/modring.hpp"
#include "finzeta/rational.hpp"
#include "finzeta/sigcomp.hpp"

namespace finzeta {

// ---------------------------------------------------------------------------
// Alternating multiple harmonic sums.

namespace detail {

inline void require_below_prime(u64 n, const PrimeContext& ctx) {
  if (n >= ctx.p()) throw std::domain_error("amhs: n must be < p (n=" + std::to_string(n) + ")");
}

// sgn^k * k^{-|s|} mod p^l for k = 0..n (entry 0 unused).
inline std::vector<u64> part_terms(SignedIndex part, u64 n, const PrimeContext& ctx) {
  const u64 m = ctx.modulus();
  std::vector<u64> t(n + 1, 0);
  for (u64 k = 1; k <= n; ++k) {
    u64 v = ctx.inv_pow(k, part.magnitude());
    if (part.sign() < 0 && (k & 1U)) v = submod(0, v, m);
    t[k] = v;
  }
  return t;
}

}  // namespace detail

// H_n(s) (star: H_n*(s)) mod p^l. O(depth * n) ring operations.
inline Residue amhs(const SignedComposition& s, u64 n, const PrimeContext& ctx, bool star = false) {
  detail::require_below_prime(n, ctx);
  const u64 m = ctx.modulus();
  if (s.empty()) return {1, m};
  if (!star && n < s.depth()) return {0, m};
  // tail[k] = H_k of the suffix processed so far; starts as H_k(empty) = 1.
  std::vector<u64> tail(n + 1, 1 % m);
  for (std::size_t i = s.depth(); i-- > 0;) {
    auto t = detail::part_terms(s[i], n, ctx);
    std::vector<u64> next(n + 1, 0);
    u64 acc = 0;
    for (u64 k = 1; k <= n; ++k) {
      acc = addmod(acc, mulmod(t[k], star ? tail[k] : tail[k - 1], m), m);
      next[k] = acc;
    }
    tail.swap(next);
  }
  return {tail[n], m};
}

// Direct summation over index tuples; reference oracle for small n.
inline Residue amhs_bruteforce(const SignedComposition& s, u64 n, const PrimeContext& ctx, bool star = false) {
  detail::require_below_prime(n, ctx);
  const u64 m = ctx.modulus();
  std::function<u64(std::size_t, u64)> rec = [&](std::size_t i, u64 upper) -> u64 {
    if (i == s.depth()) return 1 % m;
    u64 total = 0;
    for (u64 k = 1; k <= upper; ++k) {
      u64 v = ctx.inv_pow(k, s[i].magnitude());
      if (s[i].sign() < 0 && (k & 1U)) v = submod(0, v, m);
      total = addmod(total, mulmod(v, rec(i + 1, star ? k : k - 1), m), m);
    }
    return total;
  };
  return {rec(0, n), m};
}

// ---------------------------------------------------------------------------
// Bernoulli numbers and Fermat quotients mod p.

// B_0 .. B_{p-2} mod p from sum_{j=0}^{m} C(m+1, j) B_j = 0.
inline std::vector<u64> bernoulli_mod_p(u64 p) {
  if (p < 5 || !is_prime(p)) throw std::invalid_argument("bernoulli_mod_p: need a prime p >= 5");
  const u64 top = p - 2;
  std::vector<u64> b(top + 1, 0);
  b[0] = 1;
  std::vector<u64> row{1, 1};  // C(m+1, .) mod p, starting at m = 0
  std::vector<u64> next;
  row.reserve(p);
  next.reserve(p);
  for (u64 mm = 1; mm <= top; ++mm) {
    // advance Pascal row from m to m+1
    next.assign(mm + 2, 1);
    for (u64 j = 1; j <= mm; ++j) next[j] = addmod(row[j - 1], row[j], p);
    row.swap(next);
    u64 acc = 0;
    for (u64 j = 0; j < mm; ++j) {
      if (j >= 3 && (j & 1U)) continue;
      acc = addmod(acc, mulmod(row[j], b[j], p), p);
    }
    b[mm] = mulmod(submod(0, acc, p), invmod((mm + 1) % p, p), p);
  }
  return b;
}

// Default prime cap for the O(p^2) Bernoulli oracle; env FES_BERNOULLI_CAP overrides.
inline u64 bernoulli_cap() {
  if (const char* env = std::getenv("FES_BERNOULLI_CAP")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw std::invalid_argument(std::string("FES_BERNOULLI_CAP is not an integer: ") + env);
    }
  }
  return 2500;
}

namespace detail {

inline const std::vector<u64>& bernoulli_table(u64 p) {
  thread_local std::map<u64, std::vector<u64>> cache;
  auto it = cache.find(p);
  if (it != cache.end()) return it->second;
  if (cache.size() >= 16) cache.clear();
  return cache.emplace(p, bernoulli_mod_p(p)).first->second;
}

}  // namespace detail

// beta_k = B_{p-k}/k mod p; beta_1 = 1 by convention; even k gives 0.
inline u64 beta(int k, u64 p) {
  if (k == 1) return 1;
  if (k < 1 || static_cast<u64>(k) + 2 > p) throw std::out_of_range("beta: k out of range for p=" + std::to_string(p));
  if (k % 2 == 0) return 0;
  return mulmod(detail::bernoulli_table(p)[p - static_cast<u64>(k)], invmod(static_cast<u64>(k), p), p);
}

// q_k = (k^{p-1} - 1)/p mod p.
inline u64 fermat_q(int k, u64 p) {
  if (k < 2 || static_cast<u64>(k) >= p) throw std::out_of_range("fermat_q: k out of range for p=" + std::to_string(p));
  const u64 p2 = p * p;
  u64 t = powmod(static_cast<u64>(k), p - 1, p2);
  return submod(t, 1, p2) / p;
}

// ---------------------------------------------------------------------------
// Closed forms: rational combinations of p^a * prod beta * prod q.

struct Monomial {
  int p_power = 0;
  std::vector<int> beta;  // sorted odd indices >= 3
  std::vector<int> q;     // sorted indices >= 2

  [[nodiscard]] bool generator_free() const { return beta.empty() && q.empty(); }
  [[nodiscard]] int grade() const {
    int g = -p_power + static_cast<int>(q.size());
    for (int k : beta) g += k;
    return g;
  }
  auto operator<=>(const Monomial&) const = default;
};

inline Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial m{a.p_power + b.p_power, a.beta, a.q};
  m.beta.insert(m.beta.end(), b.beta.begin(), b.beta.end());
  m.q.insert(m.q.end(), b.q.begin(), b.q.end());
  std::sort(m.beta.begin(), m.beta.end());
  std::sort(m.q.begin(), m.q.end());
  return m;
}

inline std::string to_string(const Monomial& m) {
  std::string out;
  auto sep = [&] {
    if (!out.empty()) out += '*';
  };
  if (m.p_power == 1) out += "p";
  if (m.p_power > 1) out += "p^" + std::to_string(m.p_power);
  for (int k : m.beta) {
    sep();
    out += "b" + std::to_string(k);
  }
  for (int k : m.q) {
    sep();
    out += "q" + std::to_string(k);
  }
  return out.empty() ? "1" : out;
}

class ClosedForm {
 public:
  using Terms = std::map<Monomial, Rational>;

  ClosedForm() = default;
  explicit ClosedForm(Rational c) { add(Monomial{}, c); }
  ClosedForm(Rational c, Monomial m) { add(std::move(m), std::move(c)); }

  static ClosedForm beta_power(Rational c, std::vector<int> betas, int p_power = 0) {
    ClosedForm out;
    std::vector<int> kept;
    for (int k : betas) {
      if (k % 2 == 0) return out;  // beta of even index vanishes
      if (k != 1) kept.push_back(k);
    }
    std::sort(kept.begin(), kept.end());
    out.add(Monomial{p_power, std::move(kept), {}}, std::move(c));
    return out;
  }

  void add(Monomial m, const Rational& c) {
    if (c == 0) return;
    for (int k : m.beta)
      if (k % 2 == 0) return;
    auto [it, inserted] = terms_.try_emplace(std::move(m), c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }
  void add(const ClosedForm& o, const Rational& scale = 1) {
    for (const auto& [m, c] : o.terms_) add(m, c * scale);
  }

  [[nodiscard]] ClosedForm scaled(const Rational& c) const {
    ClosedForm out;
    out.add(*this, c);
    return out;
  }
  // Drops every term with p_power >= superbity (zero in A_l).
  [[nodiscard]] ClosedForm truncated(int superbity) const {
    ClosedForm out;
    for (const auto& [m, c] : terms_)
      if (m.p_power < superbity) out.add(m, c);
    return out;
  }
  [[nodiscard]] ClosedForm times_p(int a) const {
    ClosedForm out;
    for (const auto& [m, c] : terms_) {
      Monomial shifted = m;
      shifted.p_power += a;
      out.add(std::move(shifted), c);
    }
    return out;
  }

  friend ClosedForm operator*(const ClosedForm& a, const ClosedForm& b) {
    ClosedForm out;
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) out.add(ma * mb, ca * cb);
    return out;
  }
  friend ClosedForm operator+(ClosedForm a, const ClosedForm& b) {
    a.add(b);
    return a;
  }

  [[nodiscard]] const Terms& terms() const { return terms_; }
  [[nodiscard]] bool zero() const { return terms_.empty(); }
  [[nodiscard]] bool uses_beta() const {
    for (const auto& [m, c] : terms_)
      if (!m.beta.empty()) return true;
    return false;
  }
  [[nodiscard]] bool homogeneous() const {
    if (terms_.empty()) return true;
    int g = terms_.begin()->first.grade();
    for (const auto& [m, c] : terms_)
      if (m.grade() != g) return false;
    return true;
  }
  [[nodiscard]] std::optional<int> grade() const {
    if (terms_.empty()) return std::nullopt;
    return terms_.begin()->first.grade();
  }
  bool operator==(const ClosedForm&) const = default;

 private:
  Terms terms_;
};

inline std::string to_string(const ClosedForm& cf) {
  if (cf.zero()) return "0";
  std::string out;
  for (const auto& [m, c] : cf.terms()) {
    if (!out.empty()) out += c < 0 ? " - " : " + ";
    else if (c < 0) out += "-";
    Rational a = abs(c);
    if (m.p_power == 0 && m.generator_free()) {
      out += format_rational(a);
    } else {
      if (a != 1) out += format_rational(a) + "*";
      out += to_string(m);
    }
  }
  return out;
}

enum class Strictness { strict, lenient };

// Term-by-term evaluation mod p^l. Strict mode rejects generator-bearing terms
// with p_power < l-1; lenient mode uses the canonical lift of beta and q instead.
inline Residue eval_closed_form(const ClosedForm& cf, u64 p, int superbity, Strictness mode = Strictness::strict) {
  PrimeContext ctx(p, superbity);
  const u64 m = ctx.modulus();
  Residue total(0, m);
  for (const auto& [mono, c] : cf.terms()) {
    if (!mono.generator_free() && mono.p_power < superbity - 1 && mode == Strictness::strict)
      throw std::invalid_argument("closed form term " + to_string(mono) + " needs p-power >= " +
                                  std::to_string(superbity - 1));
    if (mono.p_power >= superbity) continue;
    Residue term = iota(c, ctx);
    term *= Residue(powmod(p, static_cast<u64>(mono.p_power), m), m);
    for (int k : mono.beta) term *= Residue(beta(k, p), m);
    for (int k : mono.q) term *= Residue(fermat_q(k, p), m);
    total += term;
  }
  return total;
}

// ---------------------------------------------------------------------------
// Zeta symbols: p^j * zeta^(*)_{A_l}(comp).

struct ZetaSymbol {
  SignedComposition comp;
  bool star = false;
  int superbity = 1;
  int p_power = 0;

  [[nodiscard]] int grade() const { return comp.weight() - p_power; }
  auto operator<=>(const ZetaSymbol& o) const {
    if (auto c = p_power <=> o.p_power; c != 0) return c;
    if (auto c = comp <=> o.comp; c != 0) return c;
    if (auto c = star <=> o.star; c != 0) return c;
    return superbity <=> o.superbity;
  }
  bool operator==(const ZetaSymbol&) const = default;
};

inline std::string to_string(const ZetaSymbol& z) {
  std::string out;
  if (z.p_power == 1) out += "p*";
  if (z.p_power > 1) out += "p^" + std::to_string(z.p_power) + "*";
  out += z.star ? "zeta*" : "zeta";
  out += "_A" + std::to_string(z.superbity) + "(" + to_string(z.comp) + ")";
  return out;
}

// Symbols of weight w are only evaluated at p > w + 2.
inline u64 prime_guard(const SignedComposition& s) { return static_cast<u64>(s.weight()) + 3; }

inline Residue eval_symbol(const ZetaSymbol& z, u64 p) {
  if (p < prime_guard(z.comp))
    throw std::domain_error("prime " + std::to_string(p) + " below guard for " + to_string(z));
  if (z.p_power < 0) throw std::invalid_argument("negative p-power");
  PrimeContext full(p, z.superbity);
  if (z.p_power >= z.superbity) return {0, full.modulus()};
  PrimeContext low(p, z.superbity - z.p_power);
  u64 v = amhs(z.comp, p - 1, low, z.star).value();
  return {mulmod(v, powmod(p, static_cast<u64>(z.p_power), full.modulus()), full.modulus()), full.modulus()};
}

// Per-prime memoized evaluator, for sweeps that evaluate many symbols at one prime.
class PrimeEvaluator {
 public:
  explicit PrimeEvaluator(u64 p) : p_(p) {}

  [[nodiscard]] u64 p() const { return p_; }

  const PrimeContext& context(int superbity) {
    auto& slot = contexts_[static_cast<std::size_t>(superbity)];
    if (!slot) slot = std::make_unique<PrimeContext>(p_, superbity);
    return *slot;
  }

  // H_{p-1}(comp) mod p^l, memoized.
  u64 amhs_value(const SignedComposition& comp, bool star, int superbity) {
    auto key = std::make_tuple(comp, star, superbity);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    u64 v = amhs(comp, p_ - 1, context(superbity), star).value();
    memo_.emplace(std::move(key), v);
    return v;
  }

  Residue symbol(const ZetaSymbol& z) {
    if (p_ < prime_guard(z.comp))
      throw std::domain_error("prime " + std::to_string(p_) + " below guard for " + to_string(z));
    const u64 m = context(z.superbity).modulus();
    if (z.p_power >= z.superbity) return {0, m};
    u64 v = amhs_value(z.comp, z.star, z.superbity - z.p_power);
    return {mulmod(v, powmod(p_, static_cast<u64>(z.p_power), m), m), m};
  }

  Residue closed_form(const ClosedForm& cf, int superbity, Strictness mode = Strictness::strict) {
    return eval_closed_form(cf, p_, superbity, mode);
  }

 private:
  u64 p_;
  std::unique_ptr<PrimeContext> contexts_[kMaxSuperbity + 1];
  std::map<std::tuple<SignedComposition, bool, int>, u64> memo_;
};

}  // namespace finzeta
