#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <exception>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace finzeta {

// An element of N u N-bar. sign == -1 encodes the bar.
class SignedIndex {
 public:
  constexpr SignedIndex() = default;
  constexpr SignedIndex(int magnitude, int sign) : magnitude_(magnitude), sign_(sign) {
    if (magnitude < 1) throw std::invalid_argument("signed index magnitude must be >= 1");
    if (sign != 1 && sign != -1) throw std::invalid_argument("signed index sign must be +1 or -1");
  }

  // Text/IO encoding: k-bar is written -k.
  static constexpr SignedIndex from_int(int k) {
    if (k == 0) throw std::invalid_argument("zero part");
    return k > 0 ? SignedIndex(k, 1) : SignedIndex(-k, -1);
  }

  [[nodiscard]] constexpr int magnitude() const { return magnitude_; }
  [[nodiscard]] constexpr int sign() const { return sign_; }
  [[nodiscard]] constexpr bool barred() const { return sign_ < 0; }
  [[nodiscard]] constexpr int to_int() const { return sign_ * magnitude_; }

  constexpr auto operator<=>(const SignedIndex&) const = default;

 private:
  int magnitude_ = 1;
  int sign_ = 1;
};

// O-plus: magnitudes add, signs multiply.
constexpr SignedIndex oplus(SignedIndex a, SignedIndex b) {
  return {a.magnitude() + b.magnitude(), a.sign() * b.sign()};
}

class SignedComposition {
 public:
  SignedComposition() = default;
  explicit SignedComposition(std::vector<SignedIndex> parts) : parts_(std::move(parts)) {}
  SignedComposition(std::initializer_list<int> ints) {
    parts_.reserve(ints.size());
    for (int k : ints) parts_.push_back(SignedIndex::from_int(k));
  }

  static SignedComposition from_ints(const std::vector<int>& ints) {
    std::vector<SignedIndex> parts;
    parts.reserve(ints.size());
    for (int k : ints) parts.push_back(SignedIndex::from_int(k));
    return SignedComposition(std::move(parts));
  }

  [[nodiscard]] const std::vector<SignedIndex>& parts() const { return parts_; }
  [[nodiscard]] std::size_t depth() const { return parts_.size(); }
  [[nodiscard]] bool empty() const { return parts_.empty(); }
  [[nodiscard]] const SignedIndex& operator[](std::size_t i) const { return parts_[i]; }

  [[nodiscard]] int weight() const {
    int w = 0;
    for (const auto& x : parts_) w += x.magnitude();
    return w;
  }
  [[nodiscard]] int sign() const {
    int s = 1;
    for (const auto& x : parts_) s *= x.sign();
    return s;
  }
  [[nodiscard]] bool positive() const {
    return std::all_of(parts_.begin(), parts_.end(), [](const SignedIndex& x) { return x.sign() > 0; });
  }
  [[nodiscard]] std::vector<int> to_ints() const {
    std::vector<int> out;
    out.reserve(parts_.size());
    for (const auto& x : parts_) out.push_back(x.to_int());
    return out;
  }

  void push_back(SignedIndex x) { parts_.push_back(x); }

  [[nodiscard]] SignedComposition concat(const SignedComposition& other) const {
    std::vector<SignedIndex> parts = parts_;
    parts.insert(parts.end(), other.parts_.begin(), other.parts_.end());
    return SignedComposition(std::move(parts));
  }
  [[nodiscard]] SignedComposition prepend(SignedIndex x) const {
    std::vector<SignedIndex> parts;
    parts.reserve(parts_.size() + 1);
    parts.push_back(x);
    parts.insert(parts.end(), parts_.begin(), parts_.end());
    return SignedComposition(std::move(parts));
  }
  [[nodiscard]] SignedComposition slice(std::size_t from, std::size_t to) const {
    return SignedComposition(std::vector<SignedIndex>(parts_.begin() + from, parts_.begin() + to));
  }

  bool operator==(const SignedComposition&) const = default;

  // Graded-lex: weight, depth, magnitudes, then signs (unbarred first).
  std::strong_ordering operator<=>(const SignedComposition& o) const {
    if (auto c = weight() <=> o.weight(); c != 0) return c;
    if (auto c = depth() <=> o.depth(); c != 0) return c;
    for (std::size_t i = 0; i < depth(); ++i)
      if (auto c = parts_[i].magnitude() <=> o.parts_[i].magnitude(); c != 0) return c;
    for (std::size_t i = 0; i < depth(); ++i)
      if (auto c = o.parts_[i].sign() <=> parts_[i].sign(); c != 0) return c;
    return std::strong_ordering::equal;
  }

 private:
  std::vector<SignedIndex> parts_;
};

inline std::string to_string(const SignedComposition& s) {
  std::string out;
  for (std::size_t i = 0; i < s.depth(); ++i) {
    if (i) out += ',';
    out += std::to_string(s[i].to_int());
  }
  return out;
}

inline SignedComposition reverse(const SignedComposition& s) {
  std::vector<SignedIndex> parts(s.parts().rbegin(), s.parts().rend());
  return SignedComposition(std::move(parts));
}

// s with the i-th magnitude raised by one (s (+) e_i).
inline SignedComposition bump(const SignedComposition& s, std::size_t i) {
  std::vector<SignedIndex> parts = s.parts();
  parts[i] = oplus(parts[i], SignedIndex(1, 1));
  return SignedComposition(std::move(parts));
}

struct Coarsening {
  SignedComposition comp;
  std::size_t depth;
};

// All 2^(d-1) compositions obtained by (+)-merging runs of adjacent parts.
// Bit i of the mask set means parts i and i+1 are merged.
inline std::vector<Coarsening> coarsenings(const SignedComposition& s) {
  std::vector<Coarsening> out;
  const std::size_t d = s.depth();
  if (d == 0) {
    out.push_back({s, 0});
    return out;
  }
  const std::uint64_t count = std::uint64_t{1} << (d - 1);
  out.reserve(count);
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    std::vector<SignedIndex> parts;
    SignedIndex cur = s[0];
    for (std::size_t i = 1; i < d; ++i) {
      if (mask >> (i - 1) & 1U) {
        cur = oplus(cur, s[i]);
      } else {
        parts.push_back(cur);
        cur = s[i];
      }
    }
    parts.push_back(cur);
    std::size_t depth = parts.size();
    out.push_back({SignedComposition(std::move(parts)), depth});
  }
  return out;
}

// Ordered splittings s = s_1 s_2 ... s_r into nonempty consecutive blocks.
inline std::vector<std::vector<SignedComposition>> splittings(const SignedComposition& s) {
  std::vector<std::vector<SignedComposition>> out;
  const std::size_t d = s.depth();
  if (d == 0) return out;
  const std::uint64_t count = std::uint64_t{1} << (d - 1);
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    std::vector<SignedComposition> blocks;
    std::size_t start = 0;
    for (std::size_t i = 1; i < d; ++i) {
      if (mask >> (i - 1) & 1U) {
        blocks.push_back(s.slice(start, i));
        start = i;
      }
    }
    blocks.push_back(s.slice(start, d));
    out.push_back(std::move(blocks));
  }
  return out;
}

namespace detail {

inline void require_positive(const SignedComposition& s, const char* what) {
  if (!s.positive()) throw std::invalid_argument(std::string(what) + " requires a positive composition");
}

inline std::vector<int> ones(int n) { return std::vector<int>(static_cast<std::size_t>(std::max(n, 0)), 1); }

}  // namespace detail

// v-dual from the block decomposition s = (r1, {1}^{t1-1}, r2+1, {1}^{t2-1}, ...).
inline SignedComposition v_dual_formula(const SignedComposition& s) {
  detail::require_positive(s, "v-dual");
  if (s.empty()) return s;
  std::vector<int> r, t;
  r.push_back(s[0].magnitude());
  t.push_back(1);
  for (std::size_t i = 1; i < s.depth(); ++i) {
    int m = s[i].magnitude();
    if (m == 1) {
      ++t.back();
    } else {
      r.push_back(m - 1);
      t.push_back(1);
    }
  }
  std::vector<int> out;
  for (std::size_t b = 0; b < r.size(); ++b) {
    auto o = detail::ones(r[b] - 1);
    out.insert(out.end(), o.begin(), o.end());
    out.push_back(b + 1 < r.size() ? t[b] + 1 : t[b]);
  }
  return SignedComposition::from_ints(out);
}

// Row lengths of the conjugate of the ribbon diagram of s, read top to bottom.
inline SignedComposition ribbon_conjugate(const SignedComposition& s) {
  detail::require_positive(s, "ribbon conjugate");
  if (s.empty()) return s;
  std::vector<std::pair<int, int>> cells;  // (row, col), rows downward
  int col = 0;
  int max_col = 0;
  for (std::size_t row = 0; row < s.depth(); ++row) {
    for (int j = 0; j < s[row].magnitude(); ++j) cells.emplace_back(static_cast<int>(row), col + j);
    col += s[row].magnitude() - 1;
    max_col = std::max(max_col, col);
  }
  // Mirror about the south-west to north-east diagonal.
  std::vector<int> lengths(static_cast<std::size_t>(max_col + 1), 0);
  for (auto [r, c] : cells) ++lengths[static_cast<std::size_t>(max_col - c)];
  lengths.erase(std::remove(lengths.begin(), lengths.end(), 0), lengths.end());
  return SignedComposition::from_ints(lengths);
}

// v-dual, computed by the block formula and cross-checked against the
// conjugate ribbon of the reversal.
inline SignedComposition v_dual(const SignedComposition& s) {
  SignedComposition a = v_dual_formula(s);
  SignedComposition b = ribbon_conjugate(reverse(s));
  if (!(a == b)) throw std::logic_error("v-dual routes disagree on " + to_string(s));
  return a;
}

// All compositions of the given weight in graded-lex order.
inline std::vector<SignedComposition> enumerate(int weight, bool signed_parts) {
  if (weight < 1) throw std::invalid_argument("enumerate: weight must be >= 1");
  std::vector<SignedComposition> out;
  std::vector<int> cur;
  std::function<void(int)> rec = [&](int rem) {
    if (rem == 0) {
      out.push_back(SignedComposition::from_ints(cur));
      return;
    }
    for (int k = 1; k <= rem; ++k) {
      cur.push_back(k);
      rec(rem - k);
      if (signed_parts) {
        cur.back() = -k;
        rec(rem - k);
      }
      cur.pop_back();
    }
  };
  rec(weight);
  std::sort(out.begin(), out.end());
  return out;
}

// "2,-1,3" -> (2, 1-bar, 3); whitespace tolerated.
inline SignedComposition parse_composition(const std::string& text) {
  std::vector<int> parts;
  std::size_t pos = 0;
  bool any = false;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string::npos) comma = text.size();
    std::string tok = text.substr(pos, comma - pos);
    tok.erase(0, tok.find_first_not_of(" \t"));
    tok.erase(tok.find_last_not_of(" \t") + 1);
    if (tok.empty()) {
      if (comma == text.size() && !any && pos == 0) throw std::invalid_argument("empty composition");
      throw std::invalid_argument("empty entry in composition '" + text + "'");
    }
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != tok.size() || used == 0) throw std::invalid_argument("not an integer: '" + tok + "'");
    if (v == 0) throw std::invalid_argument("zero part in composition '" + text + "'");
    parts.push_back(v);
    any = true;
    pos = comma + 1;
  }
  return SignedComposition::from_ints(parts);
}

}  // namespace finzeta

template <>
struct std::hash<finzeta::SignedComposition> {
  std::size_t operator()(const finzeta::SignedComposition& s) const noexcept {
    std::size_t h = 0x9e3779b97f4a7c15ULL;
    for (const auto& x : s.parts()) h = (h ^ static_cast<std::size_t>(x.to_int() + 1000)) * 0x100000001b3ULL;
    return h;
  }
};
