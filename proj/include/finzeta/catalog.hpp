#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "finzeta/evaluator.hpp"
#include "finzeta/relation.hpp"

namespace finzeta {

// ---------------------------------------------------------------------------
// Closed-form rules.

namespace detail {

inline ClosedForm beta_term(const Rational& c, int k, int p_power = 0) { return ClosedForm::beta_power(c, {k}, p_power); }

inline bool homogeneous_positive(const SignedComposition& s) {
  if (s.empty() || !s.positive()) return false;
  for (const auto& x : s.parts())
    if (x.magnitude() != s[0].magnitude()) return false;
  return true;
}

inline Rational sgn_pow(int e) { return e % 2 == 0 ? Rational(1) : Rational(-1); }

inline Rational binom_q(int n, int k) { return Rational(binomial(static_cast<unsigned long>(n), static_cast<unsigned long>(k))); }

// zeta_A2(s, t), s and t of the same parity.
inline ClosedForm depth2_superbity2(int s, int t, bool star) {
  const int w = s + t;
  Rational c = sgn_pow(t) * s * binom_q(w + 1, t) - sgn_pow(t) * t * binom_q(w + 1, s);
  c += star ? Rational(s + t) : Rational(-(s + t));
  return beta_term(c / 2, w + 1, 1);
}

// Printed form of the starred depth-2 superbity-2 identity, indexed (t, s).
inline ClosedForm depth2_superbity2_star_as_printed(int a, int b) { return depth2_superbity2(b, a, true); }

inline std::optional<ClosedForm> rule(const SignedComposition& s, bool star, int l) {
  const std::size_t d = s.depth();
  const int w = s.weight();
  if (d == 0) return ClosedForm(Rational(1));
  if (d == 1) star = false;

  if (homogeneous_positive(s) && !star) {
    const int k = s[0].magnitude();
    const int dd = static_cast<int>(d);
    if (l == 1) return ClosedForm{};
    if (l == 2) {
      if (w % 2 == 1) return ClosedForm{};
      return beta_term(sgn_pow(dd - 1) * k, w + 1, 1);
    }
    if (l == 3 && w % 2 == 1) return beta_term(sgn_pow(dd) * Rational(k * (w + 1), 2), w + 2, 2);
    return std::nullopt;
  }

  if (d == 1) {  // barred depth one
    const int k = s[0].magnitude();
    if (l == 1 && k == 1) return ClosedForm(Rational(-2), Monomial{0, {}, {2}});
    if (l == 1 && k % 2 == 1) return beta_term(-2 * (1 - pow2(1 - k)), k);
    if (l == 2 && k % 2 == 0) return beta_term(k * (1 - pow2(-k)), k + 1, 1);
    return std::nullopt;
  }

  if (d == 2 && l == 1) {
    const int a = s[0].magnitude(), b = s[1].magnitude();
    if (s.positive()) return beta_term(sgn_pow(a) * binom_q(w, a), w);
    if (w % 2 == 1 && s.sign() < 0) {
      Rational c = 1 - pow2(1 - w);
      return beta_term(star ? -c : c, w);
    }
    (void)b;
    return std::nullopt;
  }

  if (d == 3 && l == 1 && s.positive() && w % 2 == 1) {
    const int a = s[0].magnitude(), c = s[2].magnitude();
    Rational x = (sgn_pow(a) * binom_q(w, a) - sgn_pow(c) * binom_q(w, c)) / 2;
    return beta_term(star ? x : -x, w);
  }

  if (d == 2 && l == 2 && s.positive()) {
    const int a = s[0].magnitude(), b = s[1].magnitude();
    if ((a - b) % 2 == 0) return depth2_superbity2(a, b, star);
  }
  return std::nullopt;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Named tables.

struct TableEntry {
  std::string label;
  Relation relation;
  bool corrected = false;
  bool conjectural = false;
  std::optional<Relation> uncorrected;  // the form as printed, when it differs
  Strictness uncorrected_mode = Strictness::strict;
  std::optional<std::pair<ZetaSymbol, ClosedForm>> value;  // single-symbol entries
};

namespace detail {

inline ZetaSymbol zsym(int l, std::initializer_list<int> comp, bool star = false, int p_power = 0) {
  return ZetaSymbol{SignedComposition(comp), star, l, p_power};
}

inline ZetaSymbol zsym(int l, const std::vector<int>& comp, bool star = false) {
  return ZetaSymbol{SignedComposition::from_ints(comp), star, l, 0};
}

inline std::vector<int> ones_then(int n, std::vector<int> tail) {
  std::vector<int> out(static_cast<std::size_t>(n), 1);
  out.insert(out.end(), tail.begin(), tail.end());
  return out;
}

using LinearSide = std::vector<std::pair<Rational, ZetaSymbol>>;

// lhs = rhs_symbols + rhs_form
inline Relation equation(int l, const LinearSide& lhs, const LinearSide& rhs_symbols, const ClosedForm& rhs_form,
                         const std::string& provenance, GradeCheck grades = GradeCheck::enforce) {
  SymbolComb comb;
  for (const auto& [c, z] : lhs) add_term(comb, z, c);
  for (const auto& [c, z] : rhs_symbols) add_term(comb, z, -c);
  return Relation(l, comb, rhs_form, provenance, grades);
}

class TableBuilder {
 public:
  explicit TableBuilder(std::string name) : name_(std::move(name)) {}

  // z = form
  TableEntry& value(const ZetaSymbol& z, const ClosedForm& form) {
    TableEntry e{to_string(z), equation(z.superbity, {{1, z}}, {}, form, prov(z)), false, false, {}, {}, {}};
    e.value = std::make_pair(z, form);
    entries_.push_back(std::move(e));
    return entries_.back();
  }

  // z = sum c_i z_i + form
  TableEntry& linear(const ZetaSymbol& z, const LinearSide& rhs, const ClosedForm& form = {}) {
    entries_.push_back({to_string(z), equation(z.superbity, {{1, z}}, rhs, form, prov(z)), false, false, {}, {}, {}});
    return entries_.back();
  }

  // general lhs = rhs
  TableEntry& general(const std::string& label, int l, const LinearSide& lhs, const LinearSide& rhs,
                      const ClosedForm& form = {}) {
    entries_.push_back({label, equation(l, lhs, rhs, form, name_ + ": " + label), false, false, {}, {}, {}});
    return entries_.back();
  }

  static void mark_corrected(TableEntry& e, const ZetaSymbol& z, const LinearSide& rhs, const ClosedForm& printed,
                             Strictness mode) {
    e.corrected = true;
    e.uncorrected = equation(z.superbity, {{1, z}}, rhs, printed, e.relation.provenance() + " (as printed)",
                             GradeCheck::skip);
    e.uncorrected_mode = mode;
  }

  std::vector<TableEntry> take() { return std::move(entries_); }

 private:
  std::string prov(const ZetaSymbol& z) const { return name_ + ": " + to_string(z); }

  std::string name_;
  std::vector<TableEntry> entries_;
};

inline std::vector<TableEntry> table_wt6_depth3() {
  TableBuilder t("wt6-depth3");
  const std::vector<std::pair<std::vector<int>, Rational>> rows = {
      {{1, 3, 2}, Rational(-9, 2)}, {{1, 4, 1}, 3}, {{1, 1, 4}, Rational(-3, 2)},
      {{2, 1, 3}, Rational(3, 2)},  {{2, 3, 1}, Rational(-9, 2)}, {{3, 1, 2}, Rational(3, 2)},
      {{3, 2, 1}, 3},               {{4, 1, 1}, Rational(-3, 2)}, {{1, 2, 3}, 3}};
  for (const auto& [comp, c] : rows) t.value(zsym(1, comp), ClosedForm::beta_power(c, {3, 3}));
  return t.take();
}

inline std::vector<TableEntry> table_wt7_depth4() {
  TableBuilder t("wt7-depth4");
  const std::vector<std::pair<std::vector<int>, int>> rows = {
      {{1, 1, 1, 4}, -27}, {{1, 1, 2, 3}, 69}, {{1, 1, 3, 2}, -27}, {{1, 1, 4, 1}, 33}, {{1, 2, 1, 3}, -27},
      {{1, 2, 2, 2}, -27}, {{1, 2, 3, 1}, -63}, {{1, 3, 1, 2}, -9}, {{2, 1, 1, 3}, 33}, {{2, 1, 2, 2}, -63}};
  for (const auto& [comp, c] : rows) {
    auto z = zsym(1, comp);
    auto& e = t.value(z, beta_term(Rational(7 * c, 16), 7));
    TableBuilder::mark_corrected(e, z, {}, beta_term(Rational(c, 16), 7), Strictness::strict);
  }
  return t.take();
}

inline std::vector<TableEntry> table_superbity2_wt4() {
  TableBuilder t("superbity2-wt4");
  t.value(zsym(2, {2}), beta_term(2, 3, 1));
  t.value(zsym(2, {1, 1}), beta_term(-1, 3, 1));
  t.linear(zsym(2, {2, 1}), {{-1, zsym(2, {1, 2})}});
  t.value(zsym(2, {4}), beta_term(4, 5, 1));
  t.value(zsym(2, {1, 3}), beta_term(Rational(1, 2), 5, 1));
  t.value(zsym(2, {3, 1}), beta_term(Rational(-9, 2), 5, 1));
  const std::vector<std::pair<std::vector<int>, Rational>> fixed = {
      {{1, 1, 2}, 3}, {{2, 1, 1}, Rational(11, 2)}, {{1, 1, 1, 1}, -1}};
  for (const auto& [comp, c] : fixed) {
    auto z = zsym(2, comp);
    auto& e = t.value(z, beta_term(c, 5, 1));
    TableBuilder::mark_corrected(e, z, {}, beta_term(c, 5, 0), Strictness::lenient);
  }
  t.value(zsym(2, {1, 2, 1}), beta_term(Rational(-9, 2), 5, 1));
  for (auto comp : std::vector<std::vector<int>>{{1}, {3}, {5}, {1, 1, 1}, {1, 1, 1, 1, 1}})
    t.value(zsym(2, comp), ClosedForm{});
  return t.take();
}

inline std::vector<TableEntry> table_superbity2_wt5() {
  TableBuilder t("superbity2-wt5");
  const auto z311 = zsym(2, {3, 1, 1});
  const auto b33 = [](const Rational& c) { return ClosedForm::beta_power(c, {3, 3}, 1); };
  struct Row {
    std::vector<int> comp;
    Rational beta_coeff;
    Rational z_coeff;
    std::optional<Rational> printed_beta;
  };
  const std::vector<Row> rows = {
      {{1, 4}, 0, -2, Rational(3)},          {{4, 1}, 0, 2, Rational(-3)},      {{1, 1, 3}, 0, -1, {}},
      {{2, 3}, 0, 4, Rational(-3)},          {{1, 2, 2}, Rational(-3, 2), 3, {}}, {{2, 1, 2}, -3, 0, {}},
      {{3, 2}, 0, -4, Rational(3)},          {{2, 2, 1}, Rational(9, 2), -3, {}}, {{1, 3, 1}, 0, 0, {}}};
  for (const auto& r : rows) {
    auto z = zsym(2, r.comp);
    LinearSide rhs;
    if (r.z_coeff != 0) rhs.push_back({r.z_coeff, z311});
    auto& e = rhs.empty() ? t.value(z, b33(r.beta_coeff)) : t.linear(z, rhs, b33(r.beta_coeff));
    if (r.printed_beta) TableBuilder::mark_corrected(e, z, rhs, b33(*r.printed_beta), Strictness::strict);
  }
  return t.take();
}

inline std::vector<TableEntry> table_superbity2_wt6() {
  TableBuilder t("superbity2-wt6");
  const auto alpha = zsym(2, {4, 1, 1});
  struct Row {
    std::vector<int> comp;
    Rational beta_coeff;
    Rational alpha_coeff;
  };
  const std::vector<Row> rows = {
      {{6}, 6, 0},        {{5, 1}, -10, 0},  {{2, 1, 3}, 18, -1}, {{1, 5}, 4, 0}, {{1, 2, 3}, Rational(-11, 4), -2},
      {{2, 2, 2}, 2, 0},  {{2, 4}, -10, 0},  {{1, 3, 2}, Rational(-65, 4), 3},    {{2, 3, 1}, Rational(-9, 4), 3},
      {{3, 3}, -3, 0},    {{1, 4, 1}, 6, -2}, {{3, 1, 2}, 11, -1}, {{4, 2}, 4, 0}, {{1, 1, 4}, 0, 1},
      {{3, 2, 1}, Rational(17, 4), -2}};
  for (const auto& r : rows) {
    auto z = zsym(2, r.comp);
    LinearSide rhs;
    if (r.alpha_coeff != 0) rhs.push_back({r.alpha_coeff, alpha});
    auto form = beta_term(r.beta_coeff, 7, 1);
    auto& e = rhs.empty() ? t.value(z, form) : t.linear(z, rhs, form);
    if (r.beta_coeff != 0) TableBuilder::mark_corrected(e, z, rhs, beta_term(r.beta_coeff, 7, 0), Strictness::lenient);
  }
  return t.take();
}

inline std::vector<TableEntry> table_wt5_superbity2_thm() {
  TableBuilder t("wt5-superbity2-thm");
  const auto z = [](std::initializer_list<int> c) { return zsym(2, c); };
  const auto zs = [](std::initializer_list<int> c) { return zsym(2, c, true); };
  const auto b33 = ClosedForm::beta_power(-3, {3, 3}, 1);
  t.value(zs({1, 3, 1}), {});
  t.value(z({1, 3, 1}), {});
  t.value(zs({2, 1, 2}), b33);
  t.value(z({2, 1, 2}), b33);
  t.general("zeta*(2,3) = zeta(2,3)", 2, {{1, zs({2, 3})}}, {{1, z({2, 3})}});
  t.general("zeta(2,3) = 2 zeta*(4,1)", 2, {{1, z({2, 3})}}, {{2, zs({4, 1})}});
  t.general("zeta*(4,1) = zeta(4,1)", 2, {{1, zs({4, 1})}}, {{1, z({4, 1})}});
  t.general("2 zeta*(2,2,1) - 3 zeta(4,1) = 9p b3^2", 2, {{2, zs({2, 2, 1})}, {-3, z({4, 1})}}, {},
            ClosedForm::beta_power(9, {3, 3}, 1));
  t.general("zeta*(1,1,3) = -zeta*(3,1,1)", 2, {{1, zs({1, 1, 3})}}, {{-1, zs({3, 1, 1})}});
  t.general("zeta*(3,1,1) = zeta(1,1,3)", 2, {{1, zs({3, 1, 1})}}, {{1, z({1, 1, 3})}});
  t.general("zeta(1,1,3) = -zeta(3,1,1)", 2, {{1, z({1, 1, 3})}}, {{-1, z({3, 1, 1})}});
  t.general("2 zeta(3,1,1) = zeta(4,1)", 2, {{2, z({3, 1, 1})}}, {{1, z({4, 1})}});
  return t.take();
}

inline std::vector<TableEntry> table_wt6_superbity2_thm() {
  TableBuilder t("wt6-superbity2-thm");
  const auto alpha = zsym(2, {4, 1, 1});
  t.general("zeta*(1,1,4) = zeta*(4,1,1)", 2, {{1, zsym(2, {1, 1, 4}, true)}}, {{1, zsym(2, {4, 1, 1}, true)}});
  t.general("zeta*(4,1,1) = zeta(1,1,4)", 2, {{1, zsym(2, {4, 1, 1}, true)}}, {{1, zsym(2, {1, 1, 4})}});
  t.general("zeta(1,1,4) = zeta(4,1,1)", 2, {{1, zsym(2, {1, 1, 4})}}, {{1, alpha}});
  struct Row {
    std::vector<int> star_comp;
    std::vector<int> plain_comp;
    Rational alpha_coeff;
    Rational beta_coeff;
  };
  const std::vector<Row> rows = {{{1, 4, 1}, {1, 4, 1}, -2, 6},
                                 {{2, 3, 1}, {1, 3, 2}, 3, Rational(-65, 4)},
                                 {{1, 2, 3}, {3, 2, 1}, -2, Rational(17, 4)},
                                 {{2, 1, 3}, {3, 1, 2}, -1, 11},
                                 {{1, 3, 2}, {2, 3, 1}, 3, Rational(-9, 4)},
                                 {{3, 2, 1}, {1, 2, 3}, -2, Rational(-11, 4)},
                                 {{3, 1, 2}, {2, 1, 3}, -1, 18}};
  for (const auto& r : rows) {
    auto zs = zsym(2, r.star_comp, true);
    auto zp = zsym(2, r.plain_comp);
    t.general(to_string(zs) + " = " + to_string(zp), 2, {{1, zs}}, {{1, zp}});
    t.linear(zp, {{r.alpha_coeff, alpha}}, beta_term(r.beta_coeff, 7, 1));
  }
  return t.take();
}

inline std::vector<TableEntry> table_conjectural_superbity2() {
  TableBuilder t("conjectural-superbity2");
  const auto z = [](const std::vector<int>& c) { return zsym(2, c); };
  const auto add = [&](int lead, const std::vector<int>& comp, const LinearSide& rhs) {
    auto& e = t.general(std::to_string(lead) + "*" + to_string(z(comp)), 2, {{lead, z(comp)}}, rhs);
    e.conjectural = true;
  };
  const auto o5_2 = ones_then(5, {2}), o3_4 = ones_then(3, {4});
  add(68, {2, 3, 1, 1}, {{-480, z(o5_2)}, {716, z(o3_4)}, {-843, z({1, 6})}});
  add(34, {3, 1, 1, 2}, {{-585, z(o5_2)}, {998, z(o3_4)}, {-1029, z({1, 6})}});
  add(68, {3, 3, 1}, {{1730, z(o5_2)}, {-2480, z(o3_4)}, {2319, z({1, 6})}});
  add(12, {5, 1, 1, 1}, {{-73, z(ones_then(6, {2}))}, {12, z({1, 1, 6})}, {-3, z({1, 2, 5})}});
  const auto o3_6 = ones_then(3, {6}), o5_4 = ones_then(5, {4}), o7_2 = ones_then(7, {2});
  add(84, {3, 2, 1, 3}, {{-995, z({1, 8})}, {952, z(o3_6)}, {-1288, z(o5_4)}, {-437, z(o7_2)}, {-624, z({1, 2, 6})}});
  add(924, {2, 1, 3, 3},
      {{2509, z({1, 8})}, {-6356, z(o3_6)}, {5432, z(o5_4)}, {-180, z(o7_2)}, {801, z({1, 2, 6})}});
  add(924, {2, 3, 1, 3},
      {{-9424, z({1, 8})}, {-5824, z(o3_6)}, {11368, z(o5_4)}, {-3807, z(o7_2)}, {852, z({1, 2, 6})}});
  add(36, {1, 2, 5, 1}, {{358, z({1, 8})}, {-248, z(o3_6)}, {464, z(o5_4)}, {5, z(o7_2)}, {147, z({1, 2, 6})}});
  return t.take();
}

inline constexpr int kPatternWeight = 9;

inline std::vector<TableEntry> table_fes_depth1() {
  TableBuilder t("fes-depth1");
  for (int s = 1; s <= kPatternWeight; ++s) {
    if (s % 2 == 1) {
      auto z = zsym(1, {-s});
      t.value(z, *rule(z.comp, false, 1));
    } else if (s + 1 <= kPatternWeight) {
      auto z = zsym(2, {-s});
      t.value(z, *rule(z.comp, false, 2));
    }
  }
  return t.take();
}

inline std::vector<TableEntry> table_depth2() {
  TableBuilder t("depth2");
  for (int w = 2; w <= kPatternWeight; ++w)
    for (int a = 1; a < w; ++a) {
      const int b = w - a;
      for (bool star : {false, true}) {
        auto z = zsym(1, {a, b}, star);
        t.value(z, *rule(z.comp, star, 1));
      }
      if (w % 2 == 1)
        for (auto comp : {std::vector<int>{-a, b}, std::vector<int>{a, -b}})
          for (bool star : {false, true}) {
            auto z = zsym(1, comp, star);
            t.value(z, *rule(z.comp, star, 1));
          }
      if (w % 2 == 0 && w + 1 <= kPatternWeight)
        for (bool star : {false, true}) {
          auto z = zsym(2, {a, b}, star);
          auto form = depth2_superbity2(a, b, star);
          auto& e = t.value(z, form);
          auto printed = depth2_superbity2_star_as_printed(a, b);
          if (star && !(printed == form)) TableBuilder::mark_corrected(e, z, {}, printed, Strictness::strict);
        }
    }
  return t.take();
}

inline std::vector<TableEntry> table_depth3() {
  TableBuilder t("depth3");
  for (int w = 3; w <= kPatternWeight; w += 2)
    for (int a = 1; a < w; ++a)
      for (int b = 1; a + b < w; ++b)
        for (bool star : {false, true}) {
          auto z = zsym(1, {a, b, w - a - b}, star);
          t.value(z, *rule(z.comp, star, 1));
        }
  return t.take();
}

inline std::vector<TableEntry> table_homogeneous() {
  TableBuilder t("homogeneous");
  for (int ds = 1; ds <= 10; ++ds)
    for (int s = 1; s <= ds; ++s) {
      if (ds % s != 0) continue;
      std::vector<int> comp(static_cast<std::size_t>(ds / s), s);
      for (int l = 1; l <= 3; ++l) {
        if (l == 3 && ds % 2 == 0) continue;
        auto z = zsym(l, comp);
        t.value(z, *rule(z.comp, false, l));
      }
    }
  return t.take();
}

}  // namespace detail

inline const std::vector<std::string>& table_names() {
  static const std::vector<std::string> names = {
      "wt6-depth3",         "wt7-depth4",         "superbity2-wt4",         "superbity2-wt5",
      "superbity2-wt6",     "wt5-superbity2-thm", "wt6-superbity2-thm",     "conjectural-superbity2",
      "fes-depth1",         "depth2",             "depth3",                 "homogeneous"};
  return names;
}

inline const std::vector<TableEntry>& table(const std::string& name) {
  static const std::map<std::string, std::vector<TableEntry>> registry = [] {
    std::map<std::string, std::vector<TableEntry>> m;
    m["wt6-depth3"] = detail::table_wt6_depth3();
    m["wt7-depth4"] = detail::table_wt7_depth4();
    m["superbity2-wt4"] = detail::table_superbity2_wt4();
    m["superbity2-wt5"] = detail::table_superbity2_wt5();
    m["superbity2-wt6"] = detail::table_superbity2_wt6();
    m["wt5-superbity2-thm"] = detail::table_wt5_superbity2_thm();
    m["wt6-superbity2-thm"] = detail::table_wt6_superbity2_thm();
    m["conjectural-superbity2"] = detail::table_conjectural_superbity2();
    m["fes-depth1"] = detail::table_fes_depth1();
    m["depth2"] = detail::table_depth2();
    m["depth3"] = detail::table_depth3();
    m["homogeneous"] = detail::table_homogeneous();
    return m;
  }();
  auto it = registry.find(name);
  if (it == registry.end()) throw std::invalid_argument("unknown table '" + name + "'");
  return it->second;
}

namespace detail {

// Tables transcribed entry by entry, as opposed to the pattern tables.
inline const std::vector<std::string>& explicit_tables() {
  static const std::vector<std::string> names = {"wt6-depth3",     "wt7-depth4",         "superbity2-wt4",
                                                 "superbity2-wt5", "superbity2-wt6",     "wt5-superbity2-thm",
                                                 "wt6-superbity2-thm"};
  return names;
}

inline const std::map<std::tuple<SignedComposition, bool, int>, ClosedForm>& explicit_values() {
  static const auto values = [] {
    std::map<std::tuple<SignedComposition, bool, int>, ClosedForm> m;
    for (const auto& name : explicit_tables())
      for (const auto& e : table(name))
        if (e.value) m.emplace(std::make_tuple(e.value->first.comp, e.value->first.star, e.value->first.superbity),
                               e.value->second);
    // Star values equal plain ones throughout the superbity-1 weight-6 depth-3
    // and weight-7 depth-4 tables.
    for (const auto& name : {"wt6-depth3", "wt7-depth4"})
      for (const auto& e : table(name)) m.emplace(std::make_tuple(e.value->first.comp, true, 1), e.value->second);
    return m;
  }();
  return values;
}

}  // namespace detail

// Closed form of a symbol if one is catalogued, looking through higher
// superbities (truncated) and peeling off p-power prefactors.
inline std::optional<ClosedForm> closed_form_catalog(const ZetaSymbol& z) {
  if (z.p_power >= z.superbity) return ClosedForm{};
  if (z.p_power > 0) {
    auto base = closed_form_catalog(ZetaSymbol{z.comp, z.star, z.superbity - z.p_power, 0});
    if (!base) return std::nullopt;
    return base->times_p(z.p_power).truncated(z.superbity);
  }
  const auto& values = detail::explicit_values();
  for (int l = z.superbity; l <= kMaxSuperbity; ++l) {
    if (auto cf = detail::rule(z.comp, z.star, l)) return cf->truncated(z.superbity);
    auto it = values.find(std::make_tuple(z.comp, z.star, l));
    if (it != values.end()) return it->second.truncated(z.superbity);
  }
  return std::nullopt;
}

// Catalogued relations of the given grade and superbity: one per symbol of
// that weight with a closed form, plus the table identities that reference
// other symbols. Star symbols are expanded.
inline std::vector<Relation> catalog_relations(int weight, int superbity, bool signed_parts) {
  std::vector<Relation> out;
  if (weight < 1) return out;
  for (const auto& comp : enumerate(weight, signed_parts)) {
    ZetaSymbol z{comp, false, superbity, 0};
    if (auto cf = closed_form_catalog(z)) {
      SymbolComb lhs;
      add_term(lhs, z, 1);
      out.emplace_back(superbity, lhs, *cf, "catalog: " + to_string(z));
    }
  }
  for (const auto& name : detail::explicit_tables())
    for (const auto& e : table(name)) {
      if (e.value || e.conjectural) continue;
      if (e.relation.superbity() != superbity || e.relation.grade() != weight) continue;
      out.push_back(e.relation.expand_stars());
    }
  return out;
}

}  // namespace finzeta
