#pragma once

#include <string>
#include <vector>

#include "malcev/cyclic.hpp"
#include "malcev/series.hpp"

namespace malcev {

// Generators print as x, y, z (inverses X, Y, Z); beyond rank 3 as x4, X4,
// and so on. Runs collapse into a caret power, so y^-2 prints as Y^2.
inline std::string print_generator(int index, bool inverse) {
  std::string s;
  if (index <= 3) {
    s = inverse ? "XYZ"[index - 1] : "xyz"[index - 1];
  } else {
    s = inverse ? 'X' : 'x';
    s += std::to_string(index);
  }
  return s;
}

inline std::string print_word(const Word& w) {
  if (w.is_identity()) return "1";
  std::string out;
  const auto& ls = w.letters();
  for (std::size_t i = 0; i < ls.size();) {
    std::size_t j = i;
    while (j < ls.size() && ls[j] == ls[i]) ++j;
    out += print_generator(ls[i] < 0 ? -ls[i] : ls[i], ls[i] < 0);
    if (j - i > 1) out += "^" + std::to_string(j - i);
    i = j;
  }
  return out;
}

namespace detail {

// b*r with the sign already stripped
inline std::string radical_piece(const Rat& b) {
  return b == 1 ? "r" : rat_to_string(b) + "r";
}

}  // namespace detail

inline std::string print_coeff(const Coeff& c) {
  if (c.is_rational()) return rat_to_string(c.rational_part());
  const Rat& a = c.rational_part();
  const Rat& b = c.radical_part();
  if (a == 0) return b < 0 ? "-" + detail::radical_piece(-b) : detail::radical_piece(b);
  std::string out = "(" + rat_to_string(a);
  out += b < 0 ? " - " + detail::radical_piece(-b) : " + " + detail::radical_piece(b);
  return out + ")";
}

// Terms in series order, signs pulled out of rational coefficients, and the
// window as a trailing O(> bound). The output parses back to an equal series.
inline std::string print_series(const Series& s) {
  std::string out;
  for (const Term& t : s.terms()) {
    bool negative = false;
    std::string piece;
    if (t.coefficient.is_rational()) {
      Rat q = t.coefficient.rational_part();
      negative = q < 0;
      Rat m = negative ? Rat(-q) : q;
      if (t.word.is_identity())
        piece = rat_to_string(m);
      else
        piece = (m == 1 ? "" : rat_to_string(m)) + print_word(t.word);
    } else if (t.coefficient.rational_part() == 0) {
      Rat b = t.coefficient.radical_part();
      negative = b < 0;
      piece = detail::radical_piece(negative ? Rat(-b) : b);
      if (!t.word.is_identity()) piece += print_word(t.word);
    } else {
      piece = print_coeff(t.coefficient);
      if (!t.word.is_identity()) piece += print_word(t.word);
    }
    if (out.empty())
      out = (negative ? "-" : "") + piece;
    else
      out += (negative ? " - " : " + ") + piece;
  }
  if (!s.precision().is_exact()) {
    std::string window = "O(> " + print_word(s.precision().bound()) + ")";
    out = out.empty() ? window : out + " + " + window;
  }
  return out.empty() ? "0" : out;
}

inline std::string print_poly(const Poly& p, const std::string& var = "t") {
  if (p.is_zero()) return "0";
  std::string out;
  for (int k = p.degree(); k >= 0; --k) {
    Rat c = p.coefficient(k);
    if (c == 0) continue;
    bool negative = c < 0;
    Rat m = negative ? Rat(-c) : c;
    std::string piece;
    if (k == 0)
      piece = rat_to_string(m);
    else
      piece = (m == 1 ? "" : rat_to_string(m)) + var + (k == 1 ? "" : "^" + std::to_string(k));
    if (out.empty())
      out = (negative ? "-" : "") + piece;
    else
      out += (negative ? " - " : " + ") + piece;
  }
  return out;
}

// Basis monomials v^i u^j ordered by u-power then v-power
inline std::string print_algebra_element(const AlgebraElement& x) {
  int n = x.algebra()->degree();
  std::string out;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const Rat& c = x.coords()[x.algebra()->coord_index(i, j)];
      if (c == 0) continue;
      bool negative = c < 0;
      Rat m = negative ? Rat(-c) : c;
      std::string body;
      if (i > 0) body += i > 1 ? "v^" + std::to_string(i) : "v";
      if (j > 0) body += j > 1 ? "u^" + std::to_string(j) : "u";
      std::string piece =
          body.empty() ? rat_to_string(m) : (m == 1 ? "" : rat_to_string(m)) + body;
      if (out.empty())
        out = (negative ? "-" : "") + piece;
      else
        out += (negative ? " - " : " + ") + piece;
    }
  return out.empty() ? "0" : out;
}

}  // namespace malcev
