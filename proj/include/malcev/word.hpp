#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <vector>

#include "malcev/errors.hpp"

namespace malcev {

// One letter of a reduced word: +i is the i-th generator (1-based), -i its
// inverse.
using Letter = std::int8_t;

inline constexpr int kMaxGenerators = 64;

// Freely reduced word over a free group of arbitrary rank. The empty word is
// the identity. All constructors and operations keep the letter string
// reduced, so equality is plain letter-string equality.
class Word {
public:
  Word() = default;

  static Word generator(int index, int sign = +1) {
    if (index < 1 || index > kMaxGenerators)
      throw domain_error("generator index out of range: " + std::to_string(index));
    if (sign != 1 && sign != -1) throw domain_error("generator sign must be +1 or -1");
    Word w;
    w.letters_.push_back(static_cast<Letter>(sign * index));
    return w;
  }

  // Reduces while building, so the input may contain cancelling pairs.
  static Word from_letters(const std::vector<Letter>& raw) {
    Word w;
    for (Letter l : raw) w.push_reduced(l);
    return w;
  }

  const std::vector<Letter>& letters() const { return letters_; }
  bool is_identity() const { return letters_.empty(); }
  std::size_t length() const { return letters_.size(); }

  Word inverse() const {
    Word w;
    w.letters_.reserve(letters_.size());
    for (auto it = letters_.rbegin(); it != letters_.rend(); ++it)
      w.letters_.push_back(static_cast<Letter>(-*it));
    return w;
  }

  Word operator*(const Word& rhs) const {
    Word w = *this;
    for (Letter l : rhs.letters_) w.push_reduced(l);
    return w;
  }

  Word pow(long long e) const {
    Word base = e < 0 ? inverse() : *this;
    long long n = e < 0 ? -e : e;
    Word acc;
    for (long long i = 0; i < n; ++i) acc = acc * base;
    return acc;
  }

  int max_generator() const {
    int m = 0;
    for (Letter l : letters_) m = std::max(m, l < 0 ? -int(l) : int(l));
    return m;
  }

  // Sum of letter signs per generator, indices 1..rank.
  std::vector<long long> exponent_sums(int rank) const {
    std::vector<long long> e(static_cast<std::size_t>(rank), 0);
    for (Letter l : letters_) {
      int idx = l < 0 ? -int(l) : int(l);
      if (idx > rank) throw domain_error("word uses a generator beyond the session rank");
      e[static_cast<std::size_t>(idx - 1)] += l < 0 ? -1 : +1;
    }
    return e;
  }

  bool operator==(const Word&) const = default;

  // Shortlex on the raw letter string. Container ordering only; the group
  // order lives in magnus.hpp.
  std::strong_ordering operator<=>(const Word& rhs) const {
    if (letters_.size() != rhs.letters_.size())
      return letters_.size() <=> rhs.letters_.size();
    for (std::size_t i = 0; i < letters_.size(); ++i)
      if (letters_[i] != rhs.letters_[i]) return letters_[i] <=> rhs.letters_[i];
    return std::strong_ordering::equal;
  }

private:
  void push_reduced(Letter l) {
    if (l == 0) throw domain_error("letter 0 is not a generator");
    if (!letters_.empty() && letters_.back() == -l)
      letters_.pop_back();
    else
      letters_.push_back(l);
  }

  std::vector<Letter> letters_;
};

inline Word conjugated(const Word& c, const Word& w) { return c * w * c.inverse(); }

// w = conjugator * core * conjugator^-1 with the core cyclically reduced
struct CyclicForm {
  Word conjugator;
  Word core;
};

inline CyclicForm cyclic_form(const Word& w) {
  const auto& ls = w.letters();
  std::size_t lo = 0, hi = ls.size();
  while (hi - lo >= 2 && ls[lo] == -ls[hi - 1]) {
    ++lo;
    --hi;
  }
  CyclicForm f;
  f.conjugator = Word::from_letters(
      std::vector<Letter>(ls.begin(), ls.begin() + static_cast<std::ptrdiff_t>(lo)));
  f.core = Word::from_letters(std::vector<Letter>(ls.begin() + static_cast<std::ptrdiff_t>(lo),
                                                  ls.begin() + static_cast<std::ptrdiff_t>(hi)));
  return f;
}

inline Word commutator(const Word& a, const Word& b) {
  return a * b * a.inverse() * b.inverse();
}

struct PrimitiveRoot {
  Word root;
  long long exponent;  // >= 1, with input == root^exponent
};

// Smallest-period decomposition: the returned root is not a proper power.
inline PrimitiveRoot primitive_root(const Word& w) {
  if (w.is_identity()) throw domain_error("primitive root of the identity is undefined");
  CyclicForm form = cyclic_form(w);
  const auto& letters = form.core.letters();
  std::size_t n = letters.size();
  std::size_t period = n;
  for (std::size_t p = 1; p < n; ++p) {
    if (n % p != 0) continue;
    bool matches = true;
    for (std::size_t i = 0; matches && i < n; ++i)
      matches = letters[i] == letters[(i + p) % n];
    if (matches) {
      period = p;
      break;
    }
  }
  Word core = Word::from_letters(
      std::vector<Letter>(letters.begin(), letters.begin() + static_cast<std::ptrdiff_t>(period)));
  return PrimitiveRoot{conjugated(form.conjugator, core), static_cast<long long>(n / period)};
}

// Exponent e with w == h^e, if any. h must not be the identity.
inline std::optional<long long> power_exponent(const Word& w, const Word& h) {
  if (h.is_identity()) throw domain_error("power test against the identity is undefined");
  if (w.is_identity()) return 0;
  PrimitiveRoot ph = primitive_root(h);
  PrimitiveRoot pw = primitive_root(w);
  long long e = 0;
  if (pw.root == ph.root) {
    if (pw.exponent % ph.exponent != 0) return std::nullopt;
    e = pw.exponent / ph.exponent;
  } else if (pw.root == ph.root.inverse()) {
    if (pw.exponent % ph.exponent != 0) return std::nullopt;
    e = -(pw.exponent / ph.exponent);
  } else {
    return std::nullopt;
  }
  return h.pow(e) == w ? std::optional<long long>(e) : std::nullopt;
}

}  // namespace malcev
