#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

#include "finzeta/modring.hpp"
#include "finzeta/rational.hpp"

namespace finzeta {

// Sorted by column, no explicit zeros.
using SparseRow = std::vector<std::pair<std::size_t, Rational>>;

inline SparseRow make_row(std::map<std::size_t, Rational> entries) {
  SparseRow row;
  row.reserve(entries.size());
  for (auto& [c, x] : entries)
    if (x != 0) row.emplace_back(c, std::move(x));
  return row;
}

class RationalMatrix {
 public:
  explicit RationalMatrix(std::size_t cols = 0) : cols_(cols) {}

  void add_row(SparseRow row) {
    for (const auto& [c, x] : row) {
      if (c >= cols_) throw std::out_of_range("column index out of range");
      if (x == 0) throw std::invalid_argument("explicit zero in sparse row");
    }
    if (!std::is_sorted(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; }))
      throw std::invalid_argument("sparse row not sorted by column");
    rows_.push_back(std::move(row));
  }
  void add_dense(const std::vector<Rational>& dense) {
    SparseRow row;
    for (std::size_t c = 0; c < dense.size(); ++c)
      if (dense[c] != 0) row.emplace_back(c, dense[c]);
    if (dense.size() > cols_) cols_ = dense.size();
    add_row(std::move(row));
  }

  [[nodiscard]] std::size_t cols() const { return cols_; }
  [[nodiscard]] std::size_t size() const { return rows_.size(); }
  [[nodiscard]] const std::vector<SparseRow>& rows() const { return rows_; }

 private:
  std::size_t cols_;
  std::vector<SparseRow> rows_;
};

namespace detail {

// a + s * b on sparse rows.
inline SparseRow axpy(const SparseRow& a, const Rational& s, const SparseRow& b) {
  SparseRow out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.emplace_back(b[j].first, s * b[j].second);
      ++j;
    } else {
      Rational x = a[i].second + s * b[j].second;
      if (x != 0) out.emplace_back(a[i].first, std::move(x));
      ++i;
      ++j;
    }
  }
  return out;
}

inline const Rational* find(const SparseRow& row, std::size_t col) {
  auto it = std::lower_bound(row.begin(), row.end(), col, [](const auto& e, std::size_t c) { return e.first < c; });
  return it != row.end() && it->first == col ? &it->second : nullptr;
}

}  // namespace detail

// Incrementally maintained reduced row echelon form over Q. Pivot rows are
// monic and vanish on every other pivot column.
class Rref {
 public:
  explicit Rref(std::size_t cols) : cols_(cols), pivot_of_(cols, kNone) {}

  [[nodiscard]] std::size_t cols() const { return cols_; }
  [[nodiscard]] std::size_t rank() const { return rows_.size(); }
  [[nodiscard]] bool is_pivot(std::size_t col) const { return pivot_of_[col] != kNone; }
  [[nodiscard]] const SparseRow& pivot_row(std::size_t col) const { return rows_[pivot_of_[col]]; }
  [[nodiscard]] std::vector<std::size_t> pivots() const {
    std::vector<std::size_t> out;
    for (std::size_t c = 0; c < cols_; ++c)
      if (is_pivot(c)) out.push_back(c);
    return out;
  }

  // Row minus its projection on the pivot rows; supported on non-pivot columns.
  [[nodiscard]] SparseRow residual(const SparseRow& row) const {
    SparseRow r = row;
    for (const auto& [c, x] : row) {
      if (!is_pivot(c)) continue;
      const Rational* cur = detail::find(r, c);
      if (cur) r = detail::axpy(r, -*cur, pivot_row(c));
    }
    return r;
  }

  // Returns true iff the row was independent of the current span.
  bool insert(const SparseRow& row) {
    SparseRow r = residual(row);
    if (r.empty()) return false;
    const std::size_t lead = r.front().first;
    const Rational inv = 1 / r.front().second;
    for (auto& [c, x] : r) x *= inv;
    for (auto& other : rows_) {
      const Rational* x = detail::find(other, lead);
      if (x) other = detail::axpy(other, -*x, r);
    }
    pivot_of_[lead] = rows_.size();
    rows_.push_back(std::move(r));
    return true;
  }

  [[nodiscard]] bool contains(const SparseRow& row) const { return residual(row).empty(); }

 private:
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::size_t cols_;
  std::vector<std::size_t> pivot_of_;
  std::vector<SparseRow> rows_;
};

// Rank by sparse fraction-free elimination: integer primitive rows, pivot
// chosen as the sparsest candidate for each leading column.
inline std::size_t rank(const RationalMatrix& m) {
  using IntRow = std::vector<std::pair<std::size_t, Integer>>;
  auto to_int = [](const SparseRow& row) {
    Integer l = 1;
    for (const auto& [c, x] : row) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    IntRow out;
    for (const auto& [c, x] : row) out.emplace_back(c, x.get_num() * (l / x.get_den()));
    return out;
  };
  auto primitive = [](IntRow& row) {
    Integer g = 0;
    for (const auto& [c, x] : row) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g > 1)
      for (auto& [c, x] : row) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
  };
  // a * piv_lead - b_lead * piv, dropping the leading column.
  auto eliminate = [](const IntRow& a, const IntRow& piv) {
    const Integer& pa = piv.front().second;
    const Integer& ab = a.front().second;
    IntRow out;
    std::size_t i = 1, j = 1;
    while (i < a.size() || j < piv.size()) {
      if (j == piv.size() || (i < a.size() && a[i].first < piv[j].first)) {
        out.emplace_back(a[i].first, a[i].second * pa);
        ++i;
      } else if (i == a.size() || piv[j].first < a[i].first) {
        out.emplace_back(piv[j].first, -ab * piv[j].second);
        ++j;
      } else {
        Integer x = a[i].second * pa - ab * piv[j].second;
        if (x != 0) out.emplace_back(a[i].first, std::move(x));
        ++i;
        ++j;
      }
    }
    return out;
  };

  std::vector<IntRow> pending;
  for (const auto& r : m.rows())
    if (!r.empty()) pending.push_back(to_int(r));
  std::size_t r = 0;
  while (!pending.empty()) {
    // smallest leading column; among ties the sparsest row pivots
    std::size_t lead = pending.front().front().first;
    for (const auto& row : pending) lead = std::min(lead, row.front().first);
    std::size_t best = pending.size();
    for (std::size_t i = 0; i < pending.size(); ++i)
      if (pending[i].front().first == lead && (best == pending.size() || pending[i].size() < pending[best].size()))
        best = i;
    IntRow piv = std::move(pending[best]);
    pending.erase(pending.begin() + static_cast<long>(best));
    ++r;
    std::vector<IntRow> next;
    next.reserve(pending.size());
    for (auto& row : pending) {
      if (row.front().first != lead) {
        next.push_back(std::move(row));
        continue;
      }
      IntRow e = eliminate(row, piv);
      if (e.empty()) continue;
      primitive(e);
      next.push_back(std::move(e));
    }
    pending.swap(next);
  }
  return r;
}

// Dense Bareiss elimination; reference implementation.
inline std::size_t rank_bareiss(const RationalMatrix& m) {
  const std::size_t n = m.size(), k = m.cols();
  std::vector<std::vector<Integer>> a(n, std::vector<Integer>(k, 0));
  for (std::size_t i = 0; i < n; ++i) {
    Integer l = 1;
    for (const auto& [c, x] : m.rows()[i]) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    for (const auto& [c, x] : m.rows()[i]) a[i][c] = x.get_num() * (l / x.get_den());
  }
  Integer prev = 1;
  std::size_t r = 0;
  for (std::size_t col = 0; col < k && r < n; ++col) {
    std::size_t piv = r;
    while (piv < n && a[piv][col] == 0) ++piv;
    if (piv == n) continue;
    std::swap(a[piv], a[r]);
    for (std::size_t i = r + 1; i < n; ++i) {
      for (std::size_t j = col + 1; j < k; ++j) {
        a[i][j] = a[i][j] * a[r][col] - a[i][col] * a[r][j];
        mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
      }
      a[i][col] = 0;
    }
    prev = a[r][col];
    ++r;
  }
  return r;
}

// Dense Gaussian elimination over Q; reference implementation.
inline std::size_t rank_gauss(const RationalMatrix& m) {
  const std::size_t n = m.size(), k = m.cols();
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(k, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (const auto& [c, x] : m.rows()[i]) a[i][c] = x;
  std::size_t r = 0;
  for (std::size_t col = 0; col < k && r < n; ++col) {
    std::size_t piv = r;
    while (piv < n && a[piv][col] == 0) ++piv;
    if (piv == n) continue;
    std::swap(a[piv], a[r]);
    for (std::size_t i = r + 1; i < n; ++i) {
      if (a[i][col] == 0) continue;
      Rational f = a[i][col] / a[r][col];
      for (std::size_t j = col; j < k; ++j) a[i][j] -= f * a[r][j];
    }
    ++r;
  }
  return r;
}

// Rank over F_q. A lower bound for the rational rank; never reported as a result.
inline std::size_t rank_mod(const RationalMatrix& m, u64 q = 2305843009213693951ULL) {
  const std::size_t k = m.cols();
  std::vector<std::vector<u64>> basis;  // dense rows, leading entry 1
  std::vector<std::size_t> leads;
  for (const auto& row : m.rows()) {
    std::vector<u64> v(k, 0);
    bool bad = false;
    for (const auto& [c, x] : row) {
      u64 den = mpz_fdiv_ui(x.get_den_mpz_t(), q);
      if (den == 0) {
        bad = true;
        break;
      }
      v[c] = mulmod(mpz_fdiv_ui(x.get_num_mpz_t(), q), invmod(den, q), q);
    }
    if (bad) continue;
    for (std::size_t b = 0; b < basis.size(); ++b) {
      u64 f = v[leads[b]];
      if (f == 0) continue;
      for (std::size_t j = 0; j < k; ++j) v[j] = submod(v[j], mulmod(f, basis[b][j], q), q);
    }
    auto it = std::find_if(v.begin(), v.end(), [](u64 x) { return x != 0; });
    if (it == v.end()) continue;
    std::size_t lead = static_cast<std::size_t>(it - v.begin());
    u64 inv = invmod(v[lead], q);
    for (auto& x : v) x = mulmod(x, inv, q);
    basis.push_back(std::move(v));
    leads.push_back(lead);
  }
  return basis.size();
}

// ---------------------------------------------------------------------------
// Column universes and quotient dimensions.

// Ordered set of column keys; the order of first registration is the column order.
template <typename Key>
class SymbolIndex {
 public:
  std::size_t add(const Key& k) {
    auto [it, inserted] = index_.try_emplace(k, keys_.size());
    if (inserted) keys_.push_back(k);
    return it->second;
  }
  [[nodiscard]] std::optional<std::size_t> find(const Key& k) const {
    auto it = index_.find(k);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  [[nodiscard]] std::size_t at(const Key& k) const {
    auto it = index_.find(k);
    if (it == index_.end()) throw std::out_of_range("column not registered");
    return it->second;
  }
  [[nodiscard]] std::size_t size() const { return keys_.size(); }
  [[nodiscard]] const Key& key(std::size_t i) const { return keys_[i]; }
  [[nodiscard]] const std::vector<Key>& keys() const { return keys_; }

 private:
  std::map<Key, std::size_t> index_;
  std::vector<Key> keys_;
};

// rank(T u R) - rank(R) where T holds one indicator row per target column.
// Columns must be ordered with every non-target column before every target.
inline std::size_t quotient_dim(const std::vector<std::size_t>& targets, const Rref& relations) {
  std::vector<std::size_t> t = targets;
  std::sort(t.begin(), t.end());
  t.erase(std::unique(t.begin(), t.end()), t.end());
  std::size_t pivots = 0;
  for (std::size_t c : t) pivots += relations.is_pivot(c);
  return t.size() - pivots;
}

// General form: no column-order requirement.
inline std::size_t quotient_dim(const std::vector<std::size_t>& targets, const RationalMatrix& relations) {
  Rref rr(relations.cols());
  for (const auto& row : relations.rows()) rr.insert(row);
  std::vector<std::size_t> t = targets;
  std::sort(t.begin(), t.end());
  t.erase(std::unique(t.begin(), t.end()), t.end());
  const std::size_t base = rr.rank();
  for (std::size_t c : t) rr.insert(SparseRow{{c, Rational(1)}});
  return rr.rank() - base;
}

// Coefficients a_g with target = sum a_g * g modulo the relations, when the
// target's residual is supported on generator columns only. Generators must
// be the last columns, so that elimination never pivots on them first.
inline std::optional<std::map<std::size_t, Rational>> express(std::size_t target,
                                                              const std::vector<std::size_t>& generators,
                                                              const Rref& relations) {
  SparseRow r = relations.residual(SparseRow{{target, Rational(1)}});
  std::map<std::size_t, Rational> out;
  for (auto& [c, x] : r) {
    if (std::find(generators.begin(), generators.end(), c) == generators.end()) return std::nullopt;
    out.emplace(c, x);
  }
  return out;
}

}  // namespace finzeta
