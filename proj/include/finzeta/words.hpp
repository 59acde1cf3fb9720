#pragma once

#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "finzeta/rational.hpp"
#include "finzeta/sigcomp.hpp"

namespace finzeta {

// Letters of the level-2 x-alphabet: x_0, x_{+1}, x_{-1}.
enum class XLetter : int { zero = 0, plus = 1, minus = -1 };

class XWord {
 public:
  XWord() = default;
  explicit XWord(std::vector<XLetter> letters) : letters_(std::move(letters)) {}
  XWord(std::initializer_list<XLetter> letters) : letters_(letters) {}

  [[nodiscard]] const std::vector<XLetter>& letters() const { return letters_; }
  [[nodiscard]] std::size_t weight() const { return letters_.size(); }
  [[nodiscard]] bool empty() const { return letters_.empty(); }
  [[nodiscard]] std::size_t depth() const {
    std::size_t d = 0;
    for (auto x : letters_) d += x != XLetter::zero;
    return d;
  }
  [[nodiscard]] bool level_one() const {
    for (auto x : letters_)
      if (x == XLetter::minus) return false;
    return true;
  }

  [[nodiscard]] XWord prepend(XLetter x) const {
    std::vector<XLetter> out;
    out.reserve(letters_.size() + 1);
    out.push_back(x);
    out.insert(out.end(), letters_.begin(), letters_.end());
    return XWord(std::move(out));
  }
  [[nodiscard]] XWord concat(const XWord& o) const {
    std::vector<XLetter> out = letters_;
    out.insert(out.end(), o.letters_.begin(), o.letters_.end());
    return XWord(std::move(out));
  }

  bool operator==(const XWord&) const = default;
  std::strong_ordering operator<=>(const XWord& o) const {
    if (auto c = weight() <=> o.weight(); c != 0) return c;
    for (std::size_t i = 0; i < letters_.size(); ++i) {
      auto a = static_cast<int>(letters_[i]);
      auto b = static_cast<int>(o.letters_[i]);
      if (a != b) return b <=> a;
    }
    return std::strong_ordering::equal;
  }

 private:
  std::vector<XLetter> letters_;
};

// Finite rational combination of words. Zero coefficients are never stored.
template <typename Word>
class LinComb {
 public:
  using Terms = std::map<Word, Rational>;

  LinComb() = default;
  explicit LinComb(const Word& w, Rational c = 1) { add(w, std::move(c)); }

  void add(const Word& w, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(w, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }
  void add(const LinComb& o, const Rational& scale = 1) {
    for (const auto& [w, c] : o.terms_) add(w, c * scale);
  }

  [[nodiscard]] LinComb scaled(const Rational& c) const {
    LinComb out;
    if (c == 0) return out;
    for (const auto& [w, x] : terms_) out.terms_.emplace(w, x * c);
    return out;
  }

  [[nodiscard]] const Terms& terms() const { return terms_; }
  [[nodiscard]] bool empty() const { return terms_.empty(); }
  [[nodiscard]] std::size_t size() const { return terms_.size(); }
  [[nodiscard]] Rational coeff(const Word& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? Rational(0) : it->second;
  }
  [[nodiscard]] bool homogeneous() const {
    if (terms_.empty()) return true;
    auto w0 = terms_.begin()->first.weight();
    for (const auto& [w, c] : terms_)
      if (w.weight() != w0) return false;
    return true;
  }

  LinComb& operator+=(const LinComb& o) {
    add(o);
    return *this;
  }
  friend LinComb operator+(LinComb a, const LinComb& b) { return a += b; }
  friend LinComb operator-(LinComb a, const LinComb& b) {
    a.add(b, Rational(-1));
    return a;
  }
  bool operator==(const LinComb&) const = default;

 private:
  Terms terms_;
};

using YComb = LinComb<SignedComposition>;
using XComb = LinComb<XWord>;

// ---------------------------------------------------------------------------
// x <-> y conversion: y_{n,xi} = x_0^{n-1} x_xi.

inline XWord to_xword(const SignedComposition& y) {
  std::vector<XLetter> out;
  out.reserve(static_cast<std::size_t>(y.weight()));
  for (const auto& part : y.parts()) {
    for (int i = 1; i < part.magnitude(); ++i) out.push_back(XLetter::zero);
    out.push_back(part.sign() > 0 ? XLetter::plus : XLetter::minus);
  }
  return XWord(std::move(out));
}

inline SignedComposition to_yword(const XWord& x) {
  if (!x.empty() && x.letters().back() == XLetter::zero)
    throw std::invalid_argument("x-word ending in x_0 has no y-word form");
  SignedComposition out;
  int run = 0;
  for (auto letter : x.letters()) {
    ++run;
    if (letter != XLetter::zero) {
      out.push_back(SignedIndex(run, letter == XLetter::plus ? 1 : -1));
      run = 0;
    }
  }
  return out;
}

inline YComb to_ycomb(const XComb& c) {
  YComb out;
  for (const auto& [w, x] : c.terms()) out.add(to_yword(w), x);
  return out;
}

inline XComb to_xcomb(const YComb& c) {
  XComb out;
  for (const auto& [w, x] : c.terms()) out.add(to_xword(w), x);
  return out;
}

// ---------------------------------------------------------------------------
// Products.

namespace detail {

template <typename Word, typename Step>
LinComb<Word> memo_product(std::size_t nu, std::size_t nv, Step step) {
  // table[i][j] = product of suffixes u[i..], v[j..]
  std::vector<std::vector<LinComb<Word>>> table(nu + 1, std::vector<LinComb<Word>>(nv + 1));
  for (std::size_t i = nu + 1; i-- > 0;)
    for (std::size_t j = nv + 1; j-- > 0;) table[i][j] = step(i, j, table);
  return table[0][0];
}

}  // namespace detail

// Quasi-shuffle on y-words.
inline YComb stuffle(const SignedComposition& u, const SignedComposition& v) {
  const auto nu = u.depth();
  const auto nv = v.depth();
  return detail::memo_product<SignedComposition>(nu, nv, [&](std::size_t i, std::size_t j, const auto& t) {
    if (i == nu) return YComb(v.slice(j, nv));
    if (j == nv) return YComb(u.slice(i, nu));
    YComb out;
    for (const auto& [w, c] : t[i + 1][j].terms()) out.add(w.prepend(u[i]), c);
    for (const auto& [w, c] : t[i][j + 1].terms()) out.add(w.prepend(v[j]), c);
    for (const auto& [w, c] : t[i + 1][j + 1].terms()) out.add(w.prepend(oplus(u[i], v[j])), c);
    return out;
  });
}

inline YComb stuffle(const YComb& a, const YComb& b) {
  YComb out;
  for (const auto& [u, cu] : a.terms())
    for (const auto& [v, cv] : b.terms()) out.add(stuffle(u, v), cu * cv);
  return out;
}

inline XComb shuffle(const XWord& u, const XWord& v) {
  const auto nu = u.weight();
  const auto nv = v.weight();
  const auto& lu = u.letters();
  const auto& lv = v.letters();
  return detail::memo_product<XWord>(nu, nv, [&](std::size_t i, std::size_t j, const auto& t) {
    if (i == nu) return XComb(XWord(std::vector<XLetter>(lv.begin() + static_cast<long>(j), lv.end())));
    if (j == nv) return XComb(XWord(std::vector<XLetter>(lu.begin() + static_cast<long>(i), lu.end())));
    XComb out;
    for (const auto& [w, c] : t[i + 1][j].terms()) out.add(w.prepend(lu[i]), c);
    for (const auto& [w, c] : t[i][j + 1].terms()) out.add(w.prepend(lv[j]), c);
    return out;
  });
}

inline XComb shuffle(const XComb& a, const XComb& b) {
  XComb out;
  for (const auto& [u, cu] : a.terms())
    for (const auto& [v, cv] : b.terms()) out.add(shuffle(u, v), cu * cv);
  return out;
}

// ---------------------------------------------------------------------------
// Sign transforms.

enum class Direction { forward, inverse };

// forward: mu_i = xi_1 ... xi_i.  inverse: xi_j = mu_{j-1}^{-1} mu_j.
inline SignedComposition p_transform(const SignedComposition& w, Direction dir) {
  std::vector<SignedIndex> out;
  out.reserve(w.depth());
  int prev = 1;
  for (const auto& part : w.parts()) {
    if (dir == Direction::forward) {
      prev *= part.sign();
      out.emplace_back(part.magnitude(), prev);
    } else {
      out.emplace_back(part.magnitude(), prev * part.sign());
      prev = part.sign();
    }
  }
  return SignedComposition(std::move(out));
}

struct SignedWord {
  int sign;
  SignedComposition word;
};

inline SignedWord tau(const SignedComposition& w) {
  if (!w.positive()) throw std::invalid_argument("tau is defined on level-1 words only");
  return {w.weight() % 2 == 0 ? 1 : -1, reverse(w)};
}

// Letterwise substitution x0 -> x0 + x1, x1 -> -x1 on level-1 x-words.
inline XComb phi(const XWord& w) {
  XComb acc(XWord{});
  for (auto letter : w.letters()) {
    XComb next;
    for (const auto& [prefix, c] : acc.terms()) {
      switch (letter) {
        case XLetter::zero:
          next.add(prefix.concat(XWord{XLetter::zero}), c);
          next.add(prefix.concat(XWord{XLetter::plus}), c);
          break;
        case XLetter::plus:
          next.add(prefix.concat(XWord{XLetter::plus}), -c);
          break;
        case XLetter::minus:
          throw std::invalid_argument("phi is defined on level-1 words only");
      }
    }
    acc = std::move(next);
  }
  return acc;
}

inline XComb phi(const XComb& c) {
  XComb out;
  for (const auto& [w, x] : c.terms()) {
    if (!w.empty() && w.letters().back() == XLetter::zero)
      throw std::invalid_argument("phi input must not end in x_0");
    out.add(phi(w), x);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Star <-> plain and antipode expansions.

enum class StarDirection { star_to_plain, plain_to_star };

inline YComb star_expand(const SignedComposition& s, StarDirection dir) {
  YComb out;
  for (const auto& [t, depth] : coarsenings(s)) {
    int sign = 1;
    if (dir == StarDirection::plain_to_star && (s.depth() - depth) % 2 == 1) sign = -1;
    out.add(t, Rational(sign));
  }
  return out;
}

inline YComb star_expand(const YComb& c, StarDirection dir) {
  YComb out;
  for (const auto& [s, x] : c.terms()) out.add(star_expand(s, dir), x);
  return out;
}

enum class AntipodeMode {
  m_to_concat,  // E_{rev s} = sum (-1)^{d+r} M_{s_1} ... M_{s_r}
  e_to_concat   // M_{rev s} = sum (-1)^{d+r} E_{s_1} ... E_{s_r}
};

struct SignedProduct {
  int sign;
  std::vector<SignedComposition> factors;
};

inline std::vector<SignedProduct> antipode_expand(const SignedComposition& s, AntipodeMode /*mode*/) {
  std::vector<SignedProduct> out;
  const auto d = s.depth();
  for (auto& blocks : splittings(s)) {
    int sign = (d + blocks.size()) % 2 == 0 ? 1 : -1;
    out.push_back({sign, std::move(blocks)});
  }
  return out;
}

// QSym_2 elements in the monomial basis M_s, identified with y-words.
inline YComb e_basis(const SignedComposition& s) { return star_expand(s, StarDirection::star_to_plain); }

inline YComb evaluate_antipode(const SignedComposition& s, AntipodeMode mode) {
  YComb out;
  for (const auto& [sign, factors] : antipode_expand(s, mode)) {
    YComb prod(SignedComposition{});
    for (const auto& f : factors) prod = stuffle(prod, mode == AntipodeMode::m_to_concat ? YComb(f) : e_basis(f));
    out.add(prod, Rational(sign));
  }
  return out;
}

}  // namespace finzeta
