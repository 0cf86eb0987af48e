#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "malcev/rational.hpp"
#include "malcev/word.hpp"

namespace malcev {

// Monomial in noncommuting symbols t_1, t_2, ...: a byte string of 0-based
// symbol indices. Graded-lex order: total degree first, then the symbol
// indices left to right.
using Monomial = std::string;

struct GradedLexLess {
  bool operator()(const Monomial& a, const Monomial& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

// Integer power series in noncommuting symbols, truncated above a fixed total
// degree. Just enough arithmetic for the order predicate below.
class MagnusPoly {
public:
  explicit MagnusPoly(int truncation_degree) : maxdeg_(truncation_degree) {
    if (truncation_degree < 0) throw domain_error("negative truncation degree");
  }

  static MagnusPoly one(int truncation_degree) {
    MagnusPoly p(truncation_degree);
    p.add(Monomial(), 1);
    return p;
  }

  int truncation_degree() const { return maxdeg_; }
  const std::map<Monomial, Int, GradedLexLess>& terms() const { return terms_; }

  void add(const Monomial& m, const Int& c) {
    if (c == 0 || static_cast<int>(m.size()) > maxdeg_) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      terms_.emplace(m, c);
    } else {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  MagnusPoly operator*(const MagnusPoly& rhs) const {
    MagnusPoly out(std::min(maxdeg_, rhs.maxdeg_));
    for (const auto& [ma, ca] : terms_) {
      if (static_cast<int>(ma.size()) > out.maxdeg_) break;
      for (const auto& [mb, cb] : rhs.terms_) {
        if (static_cast<int>(ma.size() + mb.size()) > out.maxdeg_) continue;
        out.add(ma + mb, ca * cb);
      }
    }
    return out;
  }

  MagnusPoly& operator+=(const MagnusPoly& rhs) {
    for (const auto& [m, c] : rhs.terms_) add(m, c);
    return *this;
  }

  bool operator==(const MagnusPoly& rhs) const { return terms_ == rhs.terms_; }

private:
  int maxdeg_;
  std::map<Monomial, Int, GradedLexLess> terms_;
};

namespace detail {

// (1 + t_i)^sign truncated: the inverse is the alternating geometric series.
inline MagnusPoly letter_factor(int index, int sign, int maxdeg) {
  MagnusPoly p(maxdeg);
  Monomial m;
  Int c = 1;
  p.add(m, c);
  for (int d = 1; d <= maxdeg; ++d) {
    m.push_back(static_cast<char>(index - 1));
    if (sign > 0 && d > 1) break;
    if (sign < 0) c = -c;
    p.add(m, c);
  }
  return p;
}

}  // namespace detail

// Image of w under x_i -> 1 + t_i, truncated above the given total degree.
inline MagnusPoly magnus_expand(const Word& w, int truncation_degree) {
  MagnusPoly acc = MagnusPoly::one(truncation_degree);
  for (Letter l : w.letters()) {
    int index = l < 0 ? -int(l) : int(l);
    acc = acc * detail::letter_factor(index, l < 0 ? -1 : +1, truncation_degree);
  }
  return acc;
}

inline constexpr int kDefaultOrderDegreeCap = 64;

enum class Ord { less, equal, greater };

// One word plus the homogeneous pieces of its expansion, grown on demand.
// Copies share the cache, so a decorated sort expands every word at most
// once however many comparisons touch it.
class MagnusKey {
public:
  MagnusKey() : MagnusKey(Word()) {}
  explicit MagnusKey(Word w) : state_(std::make_shared<State>()) {
    state_->word = std::move(w);
  }

  const Word& word() const { return state_->word; }

  // degree-1 coefficients are the exponent sums; empty for the identity
  const std::vector<long long>& exponent_sums() const {
    State& st = *state_;
    if (st.sums.empty() && !st.word.is_identity())
      st.sums = st.word.exponent_sums(st.word.max_generator());
    return st.sums;
  }

  const std::map<Monomial, Int>& component(int degree) const {
    State& st = *state_;
    if (static_cast<int>(st.comps.size()) <= degree) st.comps = components(st.word, degree);
    return st.comps[static_cast<std::size_t>(degree)];
  }

private:
  // homogeneous components of the expansion up to maxdeg, letter by letter;
  // an inverse letter contributes its alternating geometric factor
  static std::vector<std::map<Monomial, Int>> components(const Word& w, int maxdeg) {
    std::vector<std::map<Monomial, Int>> comps(static_cast<std::size_t>(maxdeg) + 1);
    comps[0][Monomial()] = 1;
    for (Letter l : w.letters()) {
      int index = l < 0 ? -int(l) : int(l);
      char symbol = static_cast<char>(index - 1);
      std::vector<std::map<Monomial, Int>> next(static_cast<std::size_t>(maxdeg) + 1);
      for (int base = 0; base <= maxdeg; ++base) {
        for (const auto& [m, c] : comps[static_cast<std::size_t>(base)]) {
          next[static_cast<std::size_t>(base)][m] += c;
          Monomial ext = m;
          Int cc = c;
          for (int j = 1; base + j <= maxdeg; ++j) {
            ext.push_back(symbol);
            if (l < 0) cc = -cc;
            next[static_cast<std::size_t>(base + j)][ext] += cc;
            if (l > 0) break;  // a plain letter stops at degree one
          }
        }
      }
      for (auto& comp : next)
        for (auto it = comp.begin(); it != comp.end();)
          it = it->second == 0 ? comp.erase(it) : std::next(it);
      comps = std::move(next);
    }
    return comps;
  }

  struct State {
    Word word;
    std::vector<long long> sums;
    std::vector<std::map<Monomial, Int>> comps;  // indexed by degree
  };
  std::shared_ptr<State> state_;
};

struct MagnusLeastTerm {
  Monomial monomial;
  Int coefficient;
};

// Graded-lex least nonzero term of expand(w) - 1. Demands w != identity.
// Deepens the truncation one degree at a time: terms of degree < d are final
// in the degree-d expansion, so the first nonempty difference wins.
inline MagnusLeastTerm magnus_least_term(const Word& w, int degree_cap = kDefaultOrderDegreeCap) {
  if (w.is_identity()) throw domain_error("expand(1) - 1 has no least term");
  for (int d = 1; d <= degree_cap; ++d) {
    MagnusPoly p = magnus_expand(w, d);
    p.add(Monomial(), -1);
    if (!p.terms().empty()) {
      const auto& [m, c] = *p.terms().begin();
      return {m, c};
    }
  }
  throw resource_cap_error("order degree cap " + std::to_string(degree_cap) +
                           " exhausted; a nontrivial word expands to 1 only at the cap, raise it");
}

// Bi-invariant total order on the free group: u < w iff the least term of
// expand(u^-1 w) - 1 has positive coefficient. That least term is exactly
// the first graded-lex monomial where the two expansions differ, carrying
// coefficient c_w - c_u, since expand(u)^-1 (expand(w) - expand(u)) only
// adds monomials of strictly higher degree. Comparing the cached per-word
// expansions degree by degree therefore decides the order without ever
// expanding the quotient word.
inline Ord magnus_compare(const MagnusKey& u, const MagnusKey& w,
                          int degree_cap = kDefaultOrderDegreeCap) {
  if (u.word() == w.word()) return Ord::equal;
  const auto& su = u.exponent_sums();
  const auto& sw = w.exponent_sums();
  std::size_t rank = std::max(su.size(), sw.size());
  for (std::size_t i = 0; i < rank; ++i) {
    long long eu = i < su.size() ? su[i] : 0;
    long long ew = i < sw.size() ? sw[i] : 0;
    if (eu != ew) return ew > eu ? Ord::less : Ord::greater;
  }
  for (int d = 2; d <= degree_cap; ++d) {
    const auto& cu = u.component(d);
    const auto& cw = w.component(d);
    auto iu = cu.begin();
    auto iw = cw.begin();
    while (iu != cu.end() || iw != cw.end()) {
      if (iw == cw.end() || (iu != cu.end() && iu->first < iw->first))
        return iu->second > 0 ? Ord::greater : Ord::less;
      if (iu == cu.end() || iw->first < iu->first)
        return iw->second > 0 ? Ord::less : Ord::greater;
      if (iu->second != iw->second) return iw->second > iu->second ? Ord::less : Ord::greater;
      ++iu;
      ++iw;
    }
  }
  throw resource_cap_error("order degree cap " + std::to_string(degree_cap) +
                           " exhausted comparing words; raise the cap");
}

inline Ord magnus_compare(const Word& u, const Word& w, int degree_cap = kDefaultOrderDegreeCap) {
  return magnus_compare(MagnusKey(u), MagnusKey(w), degree_cap);
}

inline bool magnus_less(const Word& u, const Word& w, int degree_cap = kDefaultOrderDegreeCap) {
  return magnus_compare(u, w, degree_cap) == Ord::less;
}

// 1 < w in the group order.
inline bool magnus_positive(const Word& w, int degree_cap = kDefaultOrderDegreeCap) {
  return magnus_less(Word(), w, degree_cap);
}

// Strict-less functor for ordered containers of words under the group order.
struct MagnusLess {
  int degree_cap = kDefaultOrderDegreeCap;
  bool operator()(const Word& a, const Word& b) const { return magnus_less(a, b, degree_cap); }
};

}  // namespace malcev
