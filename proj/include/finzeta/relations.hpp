#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "finzeta/catalog.hpp"
#include "finzeta/evaluator.hpp"
#include "finzeta/relation.hpp"
#include "finzeta/sigcomp.hpp"
#include "finzeta/words.hpp"

namespace finzeta {

enum class Family { stuffle, shuffle, reversal, vdual, phi, concat };

inline const std::vector<Family>& all_families() {
  static const std::vector<Family> v = {Family::stuffle, Family::shuffle, Family::reversal,
                                        Family::vdual,   Family::phi,     Family::concat};
  return v;
}

inline std::string family_name(Family f) {
  switch (f) {
    case Family::stuffle: return "stuffle";
    case Family::shuffle: return "shuffle";
    case Family::reversal: return "reversal";
    case Family::vdual: return "vdual";
    case Family::phi: return "phi";
    case Family::concat: return "concat";
  }
  return "?";
}

inline Family parse_family(const std::string& s) {
  for (Family f : all_families())
    if (family_name(f) == s) return f;
  if (s == "stuffle-seed") return Family::stuffle;
  throw std::invalid_argument("unknown relation family '" + s + "'");
}

namespace detail {

inline void add_plain(SymbolComb& comb, const SignedComposition& comp, const Rational& c, int l, int p_power = 0) {
  add_term(comb, ZetaSymbol{comp, false, l, p_power}, c);
}

inline void add_star(SymbolComb& comb, const SignedComposition& comp, const Rational& c, int l, int p_power = 0) {
  for (const auto& [t, depth] : coarsenings(comp)) add_plain(comb, t, c, l, p_power);
}

inline void add_ycomb(SymbolComb& comb, const YComb& y, const Rational& c, int l, int p_power = 0) {
  for (const auto& [w, x] : y.terms()) add_plain(comb, w, c * x, l, p_power);
}

// zeta_sha = zeta_* o p on x-words.
inline void add_sha(SymbolComb& comb, const XComb& x, const Rational& c) {
  for (const auto& [w, k] : x.terms()) add_plain(comb, p_transform(to_yword(w), Direction::inverse), c * k, 1);
}

inline std::vector<SignedComposition> words_of(int weight, bool signed_parts) {
  if (weight == 0) return {SignedComposition{}};
  return enumerate(weight, signed_parts);
}

inline u64 spot_prime(u64 min_prime) {
  u64 p = std::max<u64>(min_prime, 31);
  while (!is_prime(p)) ++p;
  return p;
}

// Deduplicates by normalized content and spot-verifies at one prime.
class Collector {
 public:
  explicit Collector(int superbity, bool verify = true) : l_(superbity), verify_(verify) {}

  void add(const SymbolComb& lhs, const ClosedForm& rhs, const std::string& provenance) {
    if (lhs.empty()) {
      if (rhs.truncated(l_).zero()) return;
      throw std::logic_error("relation collapsed to a nonzero constant: " + provenance);
    }
    add(Relation(l_, lhs, rhs, provenance));
  }

  void add(Relation r) {
    if (!seen_.insert(to_string(r)).second) return;
    if (verify_) check(r);
    out_.push_back(std::move(r));
  }

  void add_check(ProductCheck pc) {
    if (verify_) {
      auto& ev = evaluator(spot_prime(pc.min_prime()));
      if (!evaluate(pc, ev).holds()) throw std::logic_error("product check failed spot verification: " + pc.provenance);
    }
    checks_.push_back(std::move(pc));
  }

  std::vector<Relation> take() { return std::move(out_); }
  std::vector<ProductCheck> take_checks() { return std::move(checks_); }

 private:
  PrimeEvaluator& evaluator(u64 p) {
    auto it = evals_.find(p);
    if (it == evals_.end()) it = evals_.emplace(p, std::make_unique<PrimeEvaluator>(p)).first;
    return *it->second;
  }

  void check(const Relation& r) {
    auto& ev = evaluator(spot_prime(r.min_prime()));
    if (!evaluate(r, ev).holds())
      throw std::logic_error("generated relation failed spot verification: " + r.provenance() + ": " + to_string(r));
  }

  int l_;
  bool verify_;
  std::unordered_set<std::string> seen_;
  std::vector<Relation> out_;
  std::vector<ProductCheck> checks_;
  std::map<u64, std::unique_ptr<PrimeEvaluator>> evals_;
};

inline void require(bool ok, Family f, int l, const std::string& why) {
  if (!ok)
    throw std::invalid_argument("family " + family_name(f) + " unsupported at superbity " + std::to_string(l) + ": " +
                                why);
}

inline void gen_stuffle_seed(Collector& out, int w, int l, bool signed_parts) {
  for (int k = 1; 2 * k <= w; ++k)
    for (const auto& t : enumerate(k, signed_parts)) {
      auto ct = closed_form_catalog(ZetaSymbol{t, false, l, 0});
      if (!ct) continue;
      for (const auto& s : enumerate(w - k, signed_parts)) {
        if (2 * k == w && s < t) continue;
        auto cs = closed_form_catalog(ZetaSymbol{s, false, l, 0});
        if (!cs) continue;
        SymbolComb lhs;
        add_ycomb(lhs, stuffle(t, s), 1, l);
        out.add(lhs, (*ct * *cs).truncated(l), "stuffle(" + to_string(t) + " * " + to_string(s) + ")");
      }
    }
}

inline void gen_shuffle(Collector& out, int w, bool signed_parts) {
  // (ii): zeta_sha((w u) sha v) = zeta_sha(u sha tau(w) v); u empty gives (i).
  for (int a = 1; a <= w; ++a)
    for (int b = 0; a + b <= w; ++b)
      for (const auto& ww : enumerate(a, false))
        for (const auto& u : words_of(b, false))
          for (const auto& v : words_of(w - a - b, signed_parts)) {
            auto [sign, rev] = tau(ww);
            SymbolComb lhs;
            add_sha(lhs, shuffle(to_xword(ww.concat(u)), to_xword(v)), 1);
            add_sha(lhs, shuffle(to_xword(u), to_xword(rev.concat(v))), -sign);
            std::string tag = b == 0 ? "shuffle(i)" : "shuffle(ii)";
            out.add(lhs, {}, tag + " w=" + to_string(ww) + " u=" + to_string(u) + " v=" + to_string(v));
          }
  // (iii): zeta_sha((y_s u) sha v) = (-1)^s zeta_sha(u sha (y_s v)).
  for (int s = 1; s <= w; ++s)
    for (int b = 0; s + b <= w; ++b)
      for (const auto& u : words_of(b, false))
        for (const auto& v : words_of(w - s - b, signed_parts)) {
          const SignedIndex ys(s, 1);
          SymbolComb lhs;
          add_sha(lhs, shuffle(to_xword(u.prepend(ys)), to_xword(v)), 1);
          add_sha(lhs, shuffle(to_xword(u), to_xword(v.prepend(ys))), s % 2 == 0 ? -1 : 1);
          out.add(lhs, {},
                  "shuffle(iii) s=" + std::to_string(s) + " u=" + to_string(u) + " v=" + to_string(v));
        }
}

inline void gen_reversal(Collector& out, int w, int l, bool signed_parts) {
  for (const auto& s : enumerate(w, signed_parts)) {
    const int e = (w % 2 == 0 ? 1 : -1) * s.sign();
    const SignedComposition r = reverse(s);
    for (bool star : {false, true}) {
      auto add = star ? add_star : add_plain;
      SymbolComb lhs;
      if (l == 1) {
        add(lhs, r, 1, 1, 0);
        add(lhs, s, -e, 1, 0);
      } else {
        add(lhs, r, e, 2, 0);
        add(lhs, s, -1, 2, 0);
        for (std::size_t i = 0; i < s.depth(); ++i) add(lhs, bump(s, i), -s[i].magnitude(), 2, 1);
      }
      out.add(lhs, {}, std::string(star ? "reversal* " : "reversal ") + to_string(s));
    }
  }
}

inline void gen_vdual(Collector& out, int w, int l) {
  for (const auto& s : enumerate(w, false)) {
    SymbolComb lhs;
    add_star(lhs, s, 1, l);
    add_star(lhs, v_dual(s), 1, l);
    if (l == 2)
      for (const auto& [t, depth] : coarsenings(s)) add_plain(lhs, t.prepend(SignedIndex(1, 1)), 1, 2, 1);
    out.add(lhs, {}, "vdual " + to_string(s));
  }
}

inline void gen_phi(Collector& out, int w) {
  for (const auto& s : enumerate(w, false)) {
    SymbolComb lhs;
    add_plain(lhs, s, 1, 1);
    add_ycomb(lhs, to_ycomb(phi(to_xword(s))), -1, 1);
    out.add(lhs, {}, "phi " + to_string(s));
  }
}

// zeta*(rev s) = sum (-1)^{d+r} prod zeta(s_j) and the same with star and
// plain exchanged.
inline void gen_concat(Collector& out, int w, bool signed_parts) {
  for (const auto& s : enumerate(w, signed_parts))
    for (bool lhs_star : {true, false}) {
      const bool factor_star = !lhs_star;
      const std::string tag = std::string(lhs_star ? "concat* " : "concat ") + to_string(s);
      SymbolComb lhs;
      (lhs_star ? add_star : add_plain)(lhs, reverse(s), 1, 1, 0);
      ClosedForm rhs;
      bool linear = true;
      std::vector<Product> products;
      for (const auto& [sign, factors] : antipode_expand(s, AntipodeMode::m_to_concat)) {
        Product prod{Rational(sign), {}};
        ClosedForm known(Rational(1));
        std::optional<ZetaSymbol> unknown;
        int unknowns = 0;
        for (const auto& f : factors) {
          ZetaSymbol z{f, factor_star && f.depth() > 1, 1, 0};
          prod.factors.push_back(z);
          if (auto cf = closed_form_catalog(z)) {
            known = known * *cf;
          } else {
            unknown = z;
            ++unknowns;
          }
        }
        products.push_back(prod);
        if (!linear || known.zero()) continue;
        if (unknowns == 0) {
          rhs.add(known, Rational(sign));
        } else if (unknowns == 1 && known.terms().size() == 1 && known.terms().begin()->first == Monomial{}) {
          const Rational c = -sign * known.terms().begin()->second;
          (unknown->star ? add_star : add_plain)(lhs, unknown->comp, c, 1, 0);
        } else {
          linear = false;
        }
      }
      if (linear) {
        out.add(lhs, rhs, tag);
        continue;
      }
      ProductCheck pc{1, {}, {}, tag};
      pc.lhs.push_back({Rational(1), {ZetaSymbol{reverse(s), lhs_star && s.depth() > 1, 1, 0}}});
      for (auto& prod : products) pc.lhs.push_back({-prod.coeff, std::move(prod.factors)});
      out.add_check(std::move(pc));
    }
}

}  // namespace detail

inline std::vector<Relation> generate(Family family, int weight, int superbity, bool signed_parts) {
  if (weight < 1) throw std::invalid_argument("generate: weight must be >= 1");
  if (superbity < 1 || superbity > kMaxSuperbity) throw std::invalid_argument("generate: superbity out of range");
  detail::Collector out(superbity);
  const int l = superbity;
  switch (family) {
    case Family::stuffle:
      detail::gen_stuffle_seed(out, weight, l, signed_parts);
      break;
    case Family::shuffle:
      detail::require(l == 1, family, l, "superbity 1 only");
      detail::gen_shuffle(out, weight, signed_parts);
      break;
    case Family::reversal:
      detail::require(l <= 2, family, l, "superbity 1 or 2 only");
      detail::gen_reversal(out, weight, l, signed_parts);
      break;
    case Family::vdual:
      detail::require(l <= 2, family, l, "superbity 1 or 2 only");
      detail::gen_vdual(out, weight, l);
      break;
    case Family::phi:
      detail::require(l == 1, family, l, "superbity 1 only");
      if (signed_parts) throw std::invalid_argument("family phi is available in FMZV mode only");
      detail::gen_phi(out, weight);
      break;
    case Family::concat:
      detail::require(l == 1, family, l, "superbity 1 only");
      detail::gen_concat(out, weight, signed_parts);
      break;
  }
  return out.take();
}

// Concatenation identities with two or more factors lacking a closed form.
inline std::vector<ProductCheck> generate_product_checks(int weight, bool signed_parts) {
  if (weight < 1) throw std::invalid_argument("generate: weight must be >= 1");
  detail::Collector out(1);
  detail::gen_concat(out, weight, signed_parts);
  return out.take_checks();
}

struct Closure {
  std::vector<Relation> relations;
  std::size_t skipped = 0;  // (relation, multiplier) pairs with nonzero rhs and no closed form
};

// Multiplies every relation of weight k < target by zeta(s) for all s of
// weight target - k.
inline Closure close_under_stuffle(const std::vector<Relation>& rels, int target_weight, bool signed_parts,
                                   bool verify = false) {
  Closure result;
  if (rels.empty()) return result;
  const int l = rels.front().superbity();
  detail::Collector out(l, verify);
  for (const auto& raw : rels) {
    if (raw.superbity() != l) throw std::invalid_argument("close_under_stuffle: mixed superbities");
    const int k = raw.grade();
    if (k >= target_weight) throw std::invalid_argument("close_under_stuffle: relation weight must be below target");
    const Relation r = raw.expand_stars();
    for (const auto& s : enumerate(target_weight - k, signed_parts)) {
      ClosedForm rhs;
      if (!r.rhs().zero()) {
        auto cs = closed_form_catalog(ZetaSymbol{s, false, l, 0});
        if (!cs) {
          ++result.skipped;
          continue;
        }
        rhs = (r.rhs() * *cs).truncated(l);
      }
      SymbolComb lhs;
      for (const auto& t : r.terms())
        detail::add_ycomb(lhs, stuffle(t.symbol.comp, s), t.coeff, l, t.symbol.p_power);
      if (lhs.empty() && rhs.zero()) continue;
      out.add(lhs, rhs, "(" + r.provenance() + ") * zeta(" + to_string(s) + ")");
    }
  }
  result.relations = out.take();
  return result;
}

}  // namespace finzeta
