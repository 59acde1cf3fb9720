// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "finzeta/catalog.hpp"
#include "finzeta/dimension.hpp"
#include "finzeta/verify.hpp"
#include "oracle.hpp"
#include "property_checks.hpp"

using namespace finzeta;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool ok = true;
  std::string detail;
};

// Records the first mismatch and counts the rest.
struct Tally {
  std::size_t cases = 0;
  std::size_t bad = 0;
  std::string first;

  void check(bool ok, const std::function<std::string()>& what) {
    ++cases;
    if (ok) return;
    if (bad++ == 0) first = what();
  }
  [[nodiscard]] Outcome outcome() const {
    std::ostringstream os;
    os << cases << " cases, " << bad << " mismatches";
    if (bad) os << "; first: " << first;
    return {bad == 0 && cases > 0, os.str()};
  }
};

unsigned jobs() { return std::max(1U, std::thread::hardware_concurrency()); }

Rational pow2q(int e) { return e >= 0 ? Rational(mpz_class(1) << e) : Rational(1, mpz_class(1) << -e); }

Rational binom(int n, int k) { return Rational(binomial(static_cast<unsigned long>(n), static_cast<unsigned long>(k))); }

Rational sign_pow(int e) { return e % 2 == 0 ? Rational(1) : Rational(-1); }

u64 iota_mod(const Rational& c, u64 p, int l) { return PrimeContext(p, l).iota(c); }

// c * beta_k mod p from the power-sum oracle.
u64 oracle_beta_term(const Rational& c, int k, u64 p) { return mulmod(iota_mod(c, p, 1), oracle::beta(k, p), p); }

std::string at(const SignedComposition& s, u64 p) { return to_string(s) + " at p=" + std::to_string(p); }

Outcome oracle_equivalence() {
  Tally t;
  const auto start = Clock::now();
  for (u64 p : {31ULL, 37ULL, 41ULL})
    for (int l = 1; l <= 2; ++l) {
      PrimeContext ctx(p, l);
      for (int w = 1; w <= 5; ++w)
        for (const auto& s : enumerate(w, true))
          for (bool star : {false, true})
            for (u64 n = 0; n <= 30; ++n)
              t.check(amhs(s, n, ctx, star) == amhs_bruteforce(s, n, ctx, star),
                      [&] { return at(s, p) + " n=" + std::to_string(n) + (star ? " star" : ""); });
    }
  auto o = t.outcome();
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  if (secs >= 60) o.ok = false;
  o.detail += "; " + std::to_string(secs) + " s";
  return o;
}

Outcome depth_two() {
  Tally t;
  for (u64 p : primes_in(13, 499)) {
    PrimeContext ctx(p, 1);
    for (int w = 3; w <= 9; w += 2)
      for (int s = 1; s < w; ++s) {
        const SignedComposition comp{s, w - s};
        const u64 want = oracle_beta_term(sign_pow(s) * binom(w, s), w, p);
        t.check(amhs(comp, p - 1, ctx).value() == want, [&] { return at(comp, p); });
      }
  }
  return t.outcome();
}

Outcome depth_one_and_three() {
  Tally t;
  for (u64 p : primes_in(5, 499)) {
    PrimeContext c1(p, 1), c2(p, 2);
    const auto value = [&](const SignedComposition& s, bool star, const PrimeContext& ctx) {
      return amhs(s, p - 1, ctx, star).value();
    };
    for (int w = 1; w <= 9; ++w) {
      if (p < static_cast<u64>(w) + 3) continue;
      // depth one, barred
      const SignedComposition bar{-w};
      if (w == 1) {
        t.check(value(bar, false, c1) == mulmod(iota_mod(-2, p, 1), oracle::fermat_q(2, p), p), [&] { return at(bar, p); });
      } else if (w % 2 == 1) {
        const u64 want = oracle_beta_term(-2 * (1 - pow2q(1 - w)), w, p);
        t.check(value(bar, false, c1) == want, [&] { return at(bar, p); });
      } else if (w + 1 <= 9) {
        const u64 want = oracle::scaled_beta(Rational(w) * (1 - pow2q(-w)), w + 1, 1, p, 2);
        t.check(value(bar, false, c2) == want, [&] { return at(bar, p) + " superbity 2"; });
      }
      if (w % 2 == 0) continue;
      // depth two with one bar, odd weight
      for (int a = 1; a < w; ++a)
        for (const SignedComposition& s : {SignedComposition{-a, w - a}, SignedComposition{a, -(w - a)}})
          for (bool star : {false, true}) {
            const Rational c = 1 - pow2q(1 - w);
            t.check(value(s, star, c1) == oracle_beta_term(star ? -c : c, w, p),
                    [&] { return at(s, p) + (star ? " star" : ""); });
          }
      // depth three, positive, odd weight
      for (int a = 1; a < w; ++a)
        for (int b = 1; a + b < w; ++b) {
          const int c = w - a - b;
          const SignedComposition s{a, b, c};
          const Rational x = (sign_pow(a) * binom(w, a) - sign_pow(c) * binom(w, c)) / 2;
          for (bool star : {false, true})
            t.check(value(s, star, c1) == oracle_beta_term(star ? x : -x, w, p),
                    [&] { return at(s, p) + (star ? " star" : ""); });
        }
    }
  }
  return t.outcome();
}

Outcome homogeneous() {
  Tally t;
  for (int ds = 1; ds <= 10; ++ds)
    for (int s = 1; s <= ds; ++s) {
      if (ds % s) continue;
      const int d = ds / s;
      const auto comp = SignedComposition::from_ints(std::vector<int>(static_cast<std::size_t>(d), s));
      for (u64 p : primes_in(static_cast<u64>(ds) + 3, 499)) {
        PrimeContext c2(p, 2), c3(p, 3);
        const u64 v2 = amhs(comp, p - 1, c2).value();
        const u64 want2 = ds % 2 ? 0 : oracle::scaled_beta(sign_pow(d - 1) * s, ds + 1, 1, p, 2);
        t.check(v2 == want2, [&] { return at(comp, p) + " superbity 2"; });
        if (ds % 2 == 1) {
          const u64 want3 = oracle::scaled_beta(sign_pow(d) * Rational(s * (ds + 1), 2), ds + 2, 2, p, 3);
          t.check(amhs(comp, p - 1, c3).value() == want3, [&] { return at(comp, p) + " superbity 3"; });
        }
      }
    }
  return t.outcome();
}

Outcome tables() {
  Tally t;
  const auto primes = primes_in(5, 499);
  for (const auto& name : detail::explicit_tables()) {
    for (const auto& r : verify_table(name, primes, Corrections::on, {Budget::unlimited, jobs()}))
      t.check(r.status == Status::verified, [&] { return r.provenance + ": " + status_name(r.status); });
    for (const auto& r : verify_table(name, primes, Corrections::off, {Budget::unlimited, jobs()}))
      t.check(r.refuted() == r.corrected, [&] { return r.provenance + (r.corrected ? " not refuted" : " refuted"); });
  }
  return t.outcome();
}

// zeta_sha evaluated term by term: x-word -> y-word -> inverse p-transform -> H_{p-1}.
class ShaEvaluator {
 public:
  explicit ShaEvaluator(u64 p) : ctx_(p, 1) {}

  u64 operator()(const XComb& c) {
    u64 total = 0;
    for (const auto& [x, k] : c.terms()) {
      const auto y = p_transform(to_yword(x), Direction::inverse);
      auto it = memo_.find(y);
      if (it == memo_.end()) it = memo_.emplace(y, amhs(y, ctx_.p() - 1, ctx_).value()).first;
      total = addmod(total, mulmod(ctx_.iota(k), it->second, ctx_.p()), ctx_.p());
    }
    return total;
  }

 private:
  PrimeContext ctx_;
  std::map<SignedComposition, u64> memo_;
};

std::vector<SignedComposition> words_upto(int max_weight, bool signed_parts, bool with_empty) {
  std::vector<SignedComposition> out;
  if (with_empty) out.emplace_back();
  for (int w = 1; w <= max_weight; ++w)
    for (auto& s : enumerate(w, signed_parts)) out.push_back(std::move(s));
  return out;
}

Outcome shuffle_relations() {
  constexpr int kMax = 6;
  Tally t;
  const auto level1 = words_upto(kMax, false, true);
  const auto level2 = words_upto(kMax, true, true);
  const auto sha = [](const SignedComposition& a, const SignedComposition& b) { return shuffle(to_xword(a), to_xword(b)); };
  for (u64 p : primes_in(11, 199)) {
    ShaEvaluator z(p);
    const auto neg = [p](u64 v) { return submod(0, v, p); };
    for (const auto& w : level1) {
      if (w.empty()) continue;
      const auto [sign, rev] = tau(w);
      for (const auto& u : level1)
        for (const auto& v : level2) {
          if (w.weight() + u.weight() + v.weight() > kMax) continue;
          // (i) for u empty, (ii) otherwise
          const u64 lhs = z(sha(w.concat(u), v));
          u64 rhs = z(sha(u, rev.concat(v)));
          if (sign < 0) rhs = neg(rhs);
          t.check(lhs == rhs, [&] { return "w=" + to_string(w) + " u=" + to_string(u) + " v=" + to_string(v) + " p=" + std::to_string(p); });
        }
    }
    // (iii)
    for (int s = 1; s <= kMax; ++s)
      for (const auto& u : level1)
        for (const auto& v : level2) {
          if (s + u.weight() + v.weight() > kMax) continue;
          const SignedIndex ys(s, 1);
          const u64 lhs = z(sha(u.prepend(ys), v));
          u64 rhs = z(sha(u, v.prepend(ys)));
          if (s % 2) rhs = neg(rhs);
          t.check(lhs == rhs, [&] { return "s=" + std::to_string(s) + " u=" + to_string(u) + " v=" + to_string(v) + " p=" + std::to_string(p); });
        }
  }
  return t.outcome();
}

Outcome dimensions(Mode mode, const std::vector<std::size_t>& want, int recurrence_lag) {
  std::vector<std::size_t> got;
  std::ostringstream os;
  const auto start = Clock::now();
  for (int w = 0; w < static_cast<int>(want.size()); ++w) got.push_back(dimension_bound(w, 1, mode).dim);
  bool ok = got == want;
  // Padovan: d_w = d_{w-2} + d_{w-3}; Fibonacci: d_w = d_{w-1} + d_{w-2}
  for (std::size_t w = 3; w < got.size(); ++w) {
    const std::size_t rec = recurrence_lag == 3 ? got[w - 2] + got[w - 3] : got[w - 1] + got[w - 2];
    ok = ok && got[w] == rec;
  }
  os << "dims";
  for (auto d : got) os << " " << d;
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  os << "; " << secs << " s";
  if (secs >= 600) ok = false;
  return {ok, os.str()};
}

Outcome fes_dimensions() {
  auto o = dimensions(Mode::fes, {1, 1, 1, 2, 3, 5, 8}, 2);
  auto fams = default_families(Mode::fes);
  fams.erase(Family::reversal);
  const auto without = dimension_bound(2, 1, Mode::fes, fams).dim;
  o.ok = o.ok && without > 1;
  o.detail += "; w=2 without reversal: " + std::to_string(without);
  return o;
}

Outcome conjectural() {
  const auto start = Clock::now();
  Tally t;
  const auto reps = verify_table("conjectural-superbity2", first_primes(300), Corrections::on, {Budget::unlimited, jobs()});
  for (const auto& r : reps)
    t.check(r.status == Status::verified && r.primes_checked > 0, [&] { return r.provenance + ": " + status_name(r.status); });
  auto o = t.outcome();
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  o.ok = o.ok && reps.size() == 8 && secs < 900;
  o.detail += "; " + std::to_string(reps.size()) + " relations, " + std::to_string(secs) + " s";
  return o;
}

Outcome properties() {
  const std::vector<std::pair<std::string, props::Result>> runs = {
      {"oplus", props::oplus_laws(20)},
      {"vdual", props::vdual_laws(8)},
      {"stuffle", props::stuffle_laws(6)},
      {"shuffle", props::shuffle_laws(6)},
      {"star inversion", props::star_inversion(6)},
      {"antipode", props::antipode_round_trip(5)},
      {"phi", props::phi_involution(5)},
      {"p-transform", props::p_transform_round_trip(6)},
      {"x/y words", props::xy_round_trip(6)},
      {"tau", props::tau_twice(6)},
      {"stuffle homomorphism", props::stuffle_homomorphism(5, 7, 97)},
  };
  Outcome o;
  std::ostringstream os;
  for (const auto& [name, r] : runs) {
    if (!r.ok()) {
      o.ok = false;
      os << name << " failed (" << r.failures << "/" << r.cases << ": " << r.first_failure << "); ";
    }
  }
  os << runs.size() << " suites";
  o.detail = os.str();
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"amhs agrees with brute force", oracle_equivalence},
      {"depth-2 sums", depth_two},
      {"depth-1 alternating and depth-3 sums", depth_one_and_three},
      {"homogeneous sums at superbity 2 and 3", homogeneous},
      {"explicit tables and corrections", tables},
      {"finite shuffle relations", shuffle_relations},
      {"FMZV dimension bounds", [] { return dimensions(Mode::fmzv, {1, 0, 0, 1, 0, 1, 1, 1, 2}, 3); }},
      {"FES dimension bounds", fes_dimensions},
      {"conjectural superbity-2 relations", conjectural},
      {"property suites", properties},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.ok;
    std::printf("%s %zu: %s (%s)\n", o.ok ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  return failed ? 1 : 0;
}
