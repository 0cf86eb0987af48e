#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

#include "malcev/errors.hpp"

namespace malcev {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int rat_num(const Rat& q) { return boost::multiprecision::numerator(q); }
inline Int rat_den(const Rat& q) { return boost::multiprecision::denominator(q); }

inline int sign_of(const Int& n) { return n.sign(); }
inline int sign_of(const Rat& q) { return q.sign(); }

// "3", "-3/4". Denominator 1 prints as a plain integer.
inline std::string rat_to_string(const Rat& q) {
  std::string s = rat_num(q).str();
  if (rat_den(q) != 1) s += "/" + rat_den(q).str();
  return s;
}

// Accepts optional sign, digits, optional /digits. Throws parse_error with the
// offending offset relative to the start of `text`.
inline Rat rat_from_string(const std::string& text, std::size_t base_offset = 0) {
  std::size_t i = 0;
  auto fail = [&](const char* why) -> Rat {
    throw parse_error(why, base_offset + i, {"rational number"});
  };
  if (text.empty()) return fail("empty number");
  bool neg = false;
  if (text[i] == '-' || text[i] == '+') {
    neg = text[i] == '-';
    ++i;
  }
  std::size_t digits_start = i;
  while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
  if (i == digits_start) return fail("expected digits");
  Int num(text.substr(digits_start, i - digits_start));
  Int den = 1;
  if (i < text.size() && text[i] == '/') {
    ++i;
    std::size_t den_start = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (i == den_start) return fail("expected digits after '/'");
    den = Int(text.substr(den_start, i - den_start));
    if (den == 0) return fail("zero denominator");
  }
  if (i != text.size()) return fail("trailing characters in number");
  Rat q(num, den);
  return neg ? Rat(-q) : q;
}

// d qualifies as a quadratic field discriminant here when it is square-free
// and not 0 or 1. Negative d is allowed (imaginary quadratic).
inline bool is_square_free(long long d) {
  if (d == 0 || d == 1) return false;
  long long n = d < 0 ? -d : d;
  for (long long p = 2; p * p <= n; ++p) {
    if (n % (p * p) == 0) return false;
    while (n % p == 0) n /= p;
  }
  return true;
}

}  // namespace malcev
