#pragma once

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "finzeta/evaluator.hpp"
#include "finzeta/rational.hpp"
#include "finzeta/sigcomp.hpp"
#include "finzeta/words.hpp"
#include "json.hpp"

namespace finzeta {

using SymbolComb = std::map<ZetaSymbol, Rational>;

inline void add_term(SymbolComb& comb, const ZetaSymbol& z, const Rational& c) {
  if (c == 0) return;
  if (z.p_power >= z.superbity) return;  // p^l vanishes in A_l
  auto [it, inserted] = comb.try_emplace(z, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) comb.erase(it);
  }
}

struct Term {
  Rational coeff;
  ZetaSymbol symbol;
  bool operator==(const Term&) const = default;
};

enum class GradeCheck { enforce, skip };

// sum coeff * p^j * zeta^(*)_{A_l}(comp) = rhs in A_l.
class Relation {
 public:
  Relation() = default;
  Relation(int superbity, const SymbolComb& lhs, ClosedForm rhs, std::string provenance,
           GradeCheck grades = GradeCheck::enforce)
      : superbity_(superbity), rhs_(std::move(rhs)), provenance_(std::move(provenance)) {
    for (const auto& [z, c] : lhs) {
      if (z.superbity != superbity) throw std::invalid_argument("relation mixes superbities");
      terms_.push_back({c, z});
    }
    rhs_ = rhs_.truncated(superbity);
    if (terms_.empty()) throw std::invalid_argument("relation has no terms: " + provenance_);
    if (grades == GradeCheck::enforce) check_grades();
    normalize();
    min_prime_ = natural_min_prime();
  }

  [[nodiscard]] int superbity() const { return superbity_; }
  [[nodiscard]] const std::vector<Term>& terms() const { return terms_; }
  [[nodiscard]] const ClosedForm& rhs() const { return rhs_; }
  [[nodiscard]] const std::string& provenance() const { return provenance_; }
  [[nodiscard]] u64 min_prime() const { return min_prime_; }
  [[nodiscard]] int grade() const { return terms_.front().symbol.grade(); }
  [[nodiscard]] bool has_star() const {
    return std::any_of(terms_.begin(), terms_.end(), [](const Term& t) { return t.symbol.star; });
  }

  void set_min_prime(u64 p) { min_prime_ = std::max(p, natural_min_prime()); }
  void set_provenance(std::string s) { provenance_ = std::move(s); }

  [[nodiscard]] SymbolComb lhs() const {
    SymbolComb out;
    for (const auto& t : terms_) out.emplace(t.symbol, t.coeff);
    return out;
  }

  // Same relation with every star symbol rewritten as a sum of plain ones.
  [[nodiscard]] Relation expand_stars() const {
    if (!has_star()) return *this;
    SymbolComb out;
    for (const auto& t : terms_) {
      if (!t.symbol.star) {
        add_term(out, t.symbol, t.coeff);
        continue;
      }
      for (const auto& [comp, depth] : coarsenings(t.symbol.comp))
        add_term(out, ZetaSymbol{comp, false, superbity_, t.symbol.p_power}, t.coeff);
    }
    Relation r(superbity_, out, rhs_, provenance_);
    r.min_prime_ = std::max(r.min_prime_, min_prime_);
    return r;
  }

  // Equality of the normalized content (provenance ignored).
  [[nodiscard]] bool same_content(const Relation& o) const {
    return superbity_ == o.superbity_ && terms_ == o.terms_ && rhs_ == o.rhs_;
  }

 private:
  void check_grades() const {
    const int g = terms_.front().symbol.grade();
    for (const auto& t : terms_)
      if (t.symbol.grade() != g) throw std::logic_error("relation terms of mixed grade: " + provenance_);
    for (const auto& [m, c] : rhs_.terms())
      if (m.grade() != g) throw std::logic_error("relation rhs grade differs from lhs: " + provenance_);
  }

  // Primitive integer coefficients, leading coefficient positive.
  void normalize() {
    Integer lcm = 1, gcd = 0;
    auto scan_den = [&](const Rational& c) { mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.get_den_mpz_t()); };
    for (const auto& t : terms_) scan_den(t.coeff);
    for (const auto& [m, c] : rhs_.terms()) scan_den(c);
    auto scan_num = [&](const Rational& c) {
      Integer n = c.get_num() * (lcm / c.get_den());
      mpz_gcd(gcd.get_mpz_t(), gcd.get_mpz_t(), n.get_mpz_t());
    };
    for (const auto& t : terms_) scan_num(t.coeff);
    for (const auto& [m, c] : rhs_.terms()) scan_num(c);
    Rational scale(lcm, gcd);
    scale.canonicalize();
    if (terms_.front().coeff < 0) scale = -scale;
    for (auto& t : terms_) t.coeff *= scale;
    rhs_ = rhs_.scaled(scale);
  }

  [[nodiscard]] u64 natural_min_prime() const {
    u64 p = 5;
    for (const auto& t : terms_) p = std::max(p, prime_guard(t.symbol.comp));
    for (const auto& [m, c] : rhs_.terms()) {
      for (int k : m.beta) p = std::max(p, static_cast<u64>(k) + 2);
      for (int k : m.q) p = std::max(p, static_cast<u64>(k) + 1);
    }
    return p;
  }

  int superbity_ = 1;
  std::vector<Term> terms_;
  ClosedForm rhs_;
  std::string provenance_;
  u64 min_prime_ = 5;
};

inline std::string to_string(const Relation& r) {
  std::string out;
  for (const auto& t : r.terms()) {
    if (!out.empty()) out += t.coeff < 0 ? " - " : " + ";
    else if (t.coeff < 0) out += "-";
    Rational a = abs(t.coeff);
    if (a != 1) out += format_rational(a) + "*";
    out += to_string(t.symbol);
  }
  return out + " = " + to_string(r.rhs());
}

// sum coeff * prod factors = rhs, evaluated with genuine residue products.
struct Product {
  Rational coeff;
  std::vector<ZetaSymbol> factors;
};

struct ProductCheck {
  int superbity = 1;
  std::vector<Product> lhs;
  ClosedForm rhs;
  std::string provenance;

  [[nodiscard]] u64 min_prime() const {
    u64 p = 5;
    for (const auto& prod : lhs)
      for (const auto& z : prod.factors) p = std::max(p, prime_guard(z.comp));
    for (const auto& [m, c] : rhs.terms())
      for (int k : m.beta) p = std::max(p, static_cast<u64>(k) + 2);
    return p;
  }
};

// ---------------------------------------------------------------------------
// Evaluation at one prime.

struct Sides {
  Residue lhs;
  Residue rhs;
  [[nodiscard]] bool holds() const { return lhs == rhs; }
};

inline Sides evaluate(const Relation& r, PrimeEvaluator& ev, Strictness mode = Strictness::strict) {
  const PrimeContext& ctx = ev.context(r.superbity());
  Residue lhs(0, ctx.modulus());
  for (const auto& t : r.terms()) lhs += iota(t.coeff, ctx) * ev.symbol(t.symbol);
  return {lhs, ev.closed_form(r.rhs(), r.superbity(), mode)};
}

inline Sides evaluate(const ProductCheck& pc, PrimeEvaluator& ev) {
  const PrimeContext& ctx = ev.context(pc.superbity);
  Residue lhs(0, ctx.modulus());
  for (const auto& prod : pc.lhs) {
    Residue term = iota(prod.coeff, ctx);
    for (const auto& z : prod.factors) term *= ev.symbol(z);
    lhs += term;
  }
  return {lhs, ev.closed_form(pc.rhs, pc.superbity)};
}

// ---------------------------------------------------------------------------
// JSON form: exact string rationals, compositions as signed integer arrays.

inline nlohmann::ordered_json to_json(const Relation& r) {
  nlohmann::ordered_json j;
  j["superbity"] = r.superbity();
  j["min_prime"] = r.min_prime();
  auto terms = nlohmann::ordered_json::array();
  for (const auto& t : r.terms()) {
    nlohmann::ordered_json x;
    x["coeff"] = format_rational(t.coeff);
    x["p_power"] = t.symbol.p_power;
    x["star"] = t.symbol.star;
    x["comp"] = t.symbol.comp.to_ints();
    terms.push_back(std::move(x));
  }
  j["terms"] = std::move(terms);
  auto rhs = nlohmann::ordered_json::array();
  for (const auto& [m, c] : r.rhs().terms()) {
    nlohmann::ordered_json x;
    x["coeff"] = format_rational(c);
    x["p_power"] = m.p_power;
    x["beta"] = m.beta;
    x["q"] = m.q;
    rhs.push_back(std::move(x));
  }
  j["rhs"] = std::move(rhs);
  j["provenance"] = r.provenance();
  return j;
}

inline Relation relation_from_json(const nlohmann::json& j) {
  try {
    const int l = j.at("superbity").get<int>();
    if (l < 1 || l > kMaxSuperbity) throw std::invalid_argument("superbity out of range");
    SymbolComb lhs;
    for (const auto& t : j.at("terms")) {
      ZetaSymbol z{SignedComposition::from_ints(t.at("comp").get<std::vector<int>>()), t.value("star", false), l,
                   t.value("p_power", 0)};
      add_term(lhs, z, parse_rational(t.at("coeff").get<std::string>()));
    }
    ClosedForm rhs;
    if (j.contains("rhs")) {
      for (const auto& x : j.at("rhs")) {
        Monomial m{x.value("p_power", 0), x.value("beta", std::vector<int>{}), x.value("q", std::vector<int>{})};
        std::sort(m.beta.begin(), m.beta.end());
        std::sort(m.q.begin(), m.q.end());
        rhs.add(m, parse_rational(x.at("coeff").get<std::string>()));
      }
    }
    Relation r(l, lhs, rhs, j.value("provenance", std::string("file")));
    if (j.contains("min_prime")) r.set_min_prime(j.at("min_prime").get<u64>());
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed relation JSON: ") + e.what());
  }
}

inline std::vector<Relation> relations_from_json(const nlohmann::json& j) {
  std::vector<Relation> out;
  const nlohmann::json* arr = &j;
  if (j.is_object() && j.contains("relations")) arr = &j.at("relations");
  if (arr->is_array()) {
    for (const auto& x : *arr) out.push_back(relation_from_json(x));
  } else {
    out.push_back(relation_from_json(*arr));
  }
  return out;
}

}  // namespace finzeta
