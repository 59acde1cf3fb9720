#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "finzeta/catalog.hpp"
#include "finzeta/linalg.hpp"
#include "finzeta/relations.hpp"

namespace finzeta {

enum class Mode { fmzv, fes };

inline Mode parse_mode(const std::string& s) {
  if (s == "fmzv") return Mode::fmzv;
  if (s == "fes") return Mode::fes;
  throw std::invalid_argument("mode must be fmzv or fes, got '" + s + "'");
}

inline std::string mode_name(Mode m) { return m == Mode::fmzv ? "fmzv" : "fes"; }

inline std::set<Family> default_families(Mode m) {
  if (m == Mode::fmzv) return {Family::stuffle, Family::shuffle, Family::reversal, Family::vdual, Family::phi};
  return {Family::stuffle, Family::shuffle, Family::reversal, Family::vdual};
}

struct DimensionResult {
  int weight = 0;
  int superbity = 1;
  Mode mode = Mode::fmzv;
  std::size_t targets = 0;
  std::size_t columns = 0;
  std::size_t relations = 0;
  std::size_t rank = 0;
  std::size_t dim = 0;
  std::size_t skipped_pairs = 0;
};

namespace detail {

// Column universe of one grade: closed-form monomials, then p-multiplied
// symbols, then plain symbols (the targets).
struct GradeColumns {
  SymbolIndex<Monomial> monomials;
  SymbolIndex<ZetaSymbol> symbols;

  std::size_t size() const { return monomials.size() + symbols.size(); }
};

inline GradeColumns columns_for(const std::vector<Relation>& rels, const std::vector<ZetaSymbol>& targets) {
  std::set<Monomial> monos;
  std::set<ZetaSymbol> others;
  std::set<ZetaSymbol> target_set(targets.begin(), targets.end());
  for (const auto& r : rels) {
    for (const auto& [m, c] : r.rhs().terms()) monos.insert(m);
    for (const auto& t : r.terms())
      if (!target_set.count(t.symbol)) others.insert(t.symbol);
  }
  GradeColumns cols;
  for (const auto& m : monos) cols.monomials.add(m);
  for (const auto& z : others) cols.symbols.add(z);
  for (const auto& z : targets) cols.symbols.add(z);
  return cols;
}

// sum c z - rhs as a sparse row.
inline SparseRow to_row(const Relation& r, const GradeColumns& cols) {
  std::map<std::size_t, Rational> e;
  const std::size_t off = cols.monomials.size();
  for (const auto& [m, c] : r.rhs().terms()) e[cols.monomials.at(m)] -= c;
  for (const auto& t : r.terms()) e[off + cols.symbols.at(t.symbol)] += t.coeff;
  return make_row(std::move(e));
}

inline Relation from_row(const SparseRow& row, const GradeColumns& cols, int l, const std::string& provenance) {
  const std::size_t off = cols.monomials.size();
  SymbolComb lhs;
  ClosedForm rhs;
  for (const auto& [c, x] : row) {
    if (c < off) rhs.add(cols.monomials.key(c), -x);
    else add_term(lhs, cols.symbols.key(c - off), x);
  }
  if (lhs.empty()) throw std::logic_error("relation system implies a nonzero closed-form identity");
  return Relation(l, lhs, rhs, provenance);
}

// A reduced basis of the span of the given relations.
inline std::vector<Relation> echelon_basis(const std::vector<Relation>& rels, int l, const std::string& tag) {
  if (rels.empty()) return {};
  GradeColumns cols = columns_for(rels, {});
  Rref rr(cols.size());
  for (const auto& r : rels) rr.insert(to_row(r, cols));
  std::vector<Relation> out;
  std::size_t i = 0;
  for (std::size_t c : rr.pivots()) out.push_back(from_row(rr.pivot_row(c), cols, l, tag + " #" + std::to_string(i++)));
  return out;
}

inline std::vector<Relation> p_lift(const std::vector<Relation>& rels) {
  std::vector<Relation> out;
  for (const auto& r : rels) {
    SymbolComb lhs;
    for (const auto& t : r.terms())
      add_term(lhs, ZetaSymbol{t.symbol.comp, t.symbol.star, 2, t.symbol.p_power + 1}, t.coeff);
    if (lhs.empty()) continue;
    out.emplace_back(2, lhs, r.rhs().times_p(1).truncated(2), "p*(" + r.provenance() + ")");
  }
  return out;
}

inline void append(std::vector<Relation>& to, std::vector<Relation> from) {
  to.insert(to.end(), std::make_move_iterator(from.begin()), std::make_move_iterator(from.end()));
}

// Superbity-l relation system, weight by weight, keeping reduced bases of
// every weight below the current one for the stuffle closure.
class SystemBuilder {
 public:
  SystemBuilder(int superbity, Mode mode, std::set<Family> families)
      : l_(superbity), signed_(mode == Mode::fes), families_(std::move(families)) {}

  // Generated relations of weight k: families plus closure of lower weights.
  std::vector<Relation> generated(int k) {
    std::vector<Relation> rels;
    for (Family f : families_) {
      if (!supported(f)) continue;
      append(rels, generate(f, k, l_, signed_));
    }
    if (families_.count(Family::stuffle) && !known_.empty()) {
      std::vector<Relation> lower;
      for (const auto& r : known_)
        if (r.grade() < k) lower.push_back(r);
      Closure cl = close_under_stuffle(lower, k, signed_);
      skipped_ += cl.skipped;
      append(rels, std::move(cl.relations));
    }
    return rels;
  }

  void absorb(int k, const std::vector<Relation>& rels) {
    std::vector<Relation> all = catalog_relations(k, l_, signed_);
    all.insert(all.end(), rels.begin(), rels.end());
    append(known_, echelon_basis(all, l_, "known weight " + std::to_string(k)));
  }

  [[nodiscard]] std::size_t skipped() const { return skipped_; }

 private:
  [[nodiscard]] bool supported(Family f) const {
    switch (f) {
      case Family::stuffle: return true;
      case Family::shuffle: return l_ == 1;
      case Family::reversal: return l_ <= 2;
      case Family::vdual: return l_ <= 2;
      case Family::phi: return l_ == 1 && !signed_;
      case Family::concat: return l_ == 1;
    }
    return false;
  }

  int l_;
  bool signed_;
  std::set<Family> families_;
  std::vector<Relation> known_;
  std::size_t skipped_ = 0;
};

}  // namespace detail

// Upper bound for the dimension of the Q-span of weight-w values at superbity
// l, from the generated relations.
inline DimensionResult dimension_bound(int weight, int superbity, Mode mode, const std::set<Family>& families) {
  if (weight < 0) throw std::invalid_argument("dim: weight must be >= 0");
  if (superbity < 1 || superbity > 2) throw std::invalid_argument("dim: superbity must be 1 or 2");
  if (mode == Mode::fes && superbity != 1) throw std::invalid_argument("dim: FES mode supports superbity 1 only");
  DimensionResult res;
  res.weight = weight;
  res.superbity = superbity;
  res.mode = mode;
  if (weight == 0) {
    res.targets = res.dim = 1;
    return res;
  }
  const bool signed_parts = mode == Mode::fes;

  std::vector<Relation> rels;
  if (superbity == 1) {
    detail::SystemBuilder b(1, mode, families);
    for (int k = 1; k < weight; ++k) b.absorb(k, b.generated(k));
    rels = b.generated(weight);
    res.skipped_pairs = b.skipped();
  } else {
    detail::SystemBuilder b1(1, mode, families), b2(2, mode, families);
    for (int k = 1; k <= weight; ++k) b1.absorb(k, b1.generated(k));
    auto top = b1.generated(weight + 1);
    detail::append(top, catalog_relations(weight + 1, 1, signed_parts));
    for (int k = 1; k < weight; ++k) b2.absorb(k, b2.generated(k));
    rels = b2.generated(weight);
    detail::append(rels, detail::p_lift(top));
    res.skipped_pairs = b1.skipped() + b2.skipped();
  }

  std::vector<ZetaSymbol> targets;
  for (const auto& s : enumerate(weight, signed_parts)) targets.push_back(ZetaSymbol{s, false, superbity, 0});
  auto cols = detail::columns_for(rels, targets);
  Rref rr(cols.size());
  for (const auto& r : rels) rr.insert(detail::to_row(r, cols));
  std::vector<std::size_t> target_cols;
  const std::size_t off = cols.monomials.size();
  for (const auto& z : targets) target_cols.push_back(off + cols.symbols.at(z));

  res.targets = targets.size();
  res.columns = cols.size();
  res.relations = rels.size();
  res.rank = rr.rank();
  res.dim = quotient_dim(target_cols, rr);
  return res;
}

inline DimensionResult dimension_bound(int weight, int superbity, Mode mode) {
  return dimension_bound(weight, superbity, mode, default_families(mode));
}

// target = sum c_m * m over the given monomials, modulo rels.
inline std::optional<ClosedForm> express_in_monomials(const ZetaSymbol& target, const std::vector<Monomial>& generators,
                                                      const std::vector<Relation>& rels) {
  SymbolIndex<ZetaSymbol> symbols;
  std::set<Monomial> gens(generators.begin(), generators.end()), others;
  symbols.add(target);
  for (const auto& r : rels) {
    for (const auto& t : r.terms()) symbols.add(t.symbol);
    for (const auto& [m, c] : r.rhs().terms())
      if (!gens.count(m)) others.insert(m);
  }
  SymbolIndex<Monomial> monos;
  for (const auto& m : others) monos.add(m);
  for (const auto& m : generators) monos.add(m);
  const std::size_t off = symbols.size();
  Rref rr(off + monos.size());
  for (const auto& r : rels) {
    std::map<std::size_t, Rational> e;
    for (const auto& t : r.terms()) e[symbols.at(t.symbol)] += t.coeff;
    for (const auto& [m, c] : r.rhs().terms()) e[off + monos.at(m)] -= c;
    rr.insert(make_row(std::move(e)));
  }
  std::vector<std::size_t> gen_cols;
  for (const auto& m : generators) gen_cols.push_back(off + monos.at(m));
  auto coeffs = express(symbols.at(target), gen_cols, rr);
  if (!coeffs) return std::nullopt;
  ClosedForm out;
  for (const auto& [c, x] : *coeffs) out.add(monos.key(c - off), x);
  return out;
}

}  // namespace finzeta
