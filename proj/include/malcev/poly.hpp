#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include "malcev/rational.hpp"

namespace malcev {

// Dense univariate polynomial over Q, little-endian coefficients. Small
// degrees only; everything here backs number-field arithmetic, not bulk
// computation.
class Poly {
public:
  Poly() = default;
  Poly(std::initializer_list<Rat> coeffs) : c_(coeffs) { normalize(); }

  static Poly constant(Rat v) { return Poly(std::vector<Rat>{std::move(v)}); }
  static Poly variable() { return Poly(std::vector<Rat>{Rat(0), Rat(1)}); }
  static Poly from_coefficients(std::vector<Rat> coeffs) { return Poly(std::move(coeffs)); }

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }

  const std::vector<Rat>& coefficients() const { return c_; }
  Rat coefficient(int i) const {
    return i >= 0 && i < static_cast<int>(c_.size()) ? c_[static_cast<std::size_t>(i)] : Rat(0);
  }
  const Rat& leading() const {
    if (is_zero()) throw domain_error("zero polynomial has no leading coefficient");
    return c_.back();
  }
  bool is_monic() const { return !is_zero() && c_.back() == 1; }
  bool has_integer_coefficients() const {
    for (const Rat& q : c_)
      if (rat_den(q) != 1) return false;
    return true;
  }

  Poly operator+(const Poly& rhs) const {
    std::vector<Rat> out(std::max(c_.size(), rhs.c_.size()), Rat(0));
    for (std::size_t i = 0; i < c_.size(); ++i) out[i] += c_[i];
    for (std::size_t i = 0; i < rhs.c_.size(); ++i) out[i] += rhs.c_[i];
    return Poly(std::move(out));
  }

  Poly operator-(const Poly& rhs) const { return *this + rhs.scaled(Rat(-1)); }

  Poly scaled(const Rat& s) const {
    std::vector<Rat> out = c_;
    for (Rat& q : out) q *= s;
    return Poly(std::move(out));
  }

  Poly operator*(const Poly& rhs) const {
    if (is_zero() || rhs.is_zero()) return Poly();
    std::vector<Rat> out(c_.size() + rhs.c_.size() - 1, Rat(0));
    for (std::size_t i = 0; i < c_.size(); ++i)
      for (std::size_t j = 0; j < rhs.c_.size(); ++j) out[i + j] += c_[i] * rhs.c_[j];
    return Poly(std::move(out));
  }

  // quotient and remainder coefficient vectors, little-endian
  std::pair<std::vector<Rat>, std::vector<Rat>> divmod_vectors(const Poly& divisor) const {
    if (divisor.is_zero()) throw domain_error("polynomial division by zero");
    std::vector<Rat> rem = c_;
    std::vector<Rat> quo;
    int dd = divisor.degree();
    while (static_cast<int>(rem.size()) - 1 >= dd) {
      Rat factor = rem.back() / divisor.leading();
      int shift = static_cast<int>(rem.size()) - 1 - dd;
      if (static_cast<int>(quo.size()) < shift + 1) quo.resize(static_cast<std::size_t>(shift + 1), Rat(0));
      quo[static_cast<std::size_t>(shift)] += factor;
      for (int i = 0; i <= dd; ++i)
        rem[static_cast<std::size_t>(i + shift)] -= factor * divisor.c_[static_cast<std::size_t>(i)];
      while (!rem.empty() && rem.back() == 0) rem.pop_back();
    }
    return {std::move(quo), std::move(rem)};
  }

  Poly mod(const Poly& divisor) const { return Poly(divmod_vectors(divisor).second); }

  Rat eval(const Rat& x) const {
    Rat acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  // this(g) reduced mod f, by Horner over the quotient ring
  Poly compose_mod(const Poly& g, const Poly& f) const {
    Poly acc;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it)
      acc = (acc * g + Poly::constant(*it)).mod(f);
    return acc;
  }

  Poly monic() const {
    if (is_zero()) return *this;
    return scaled(Rat(1) / leading());
  }

  bool operator==(const Poly&) const = default;
  // structural order for use as container key: degree, then coefficients low
  // to high by rational value
  bool operator<(const Poly& rhs) const {
    if (c_.size() != rhs.c_.size()) return c_.size() < rhs.c_.size();
    for (std::size_t i = 0; i < c_.size(); ++i)
      if (c_[i] != rhs.c_[i]) return c_[i] < rhs.c_[i];
    return false;
  }

private:
  explicit Poly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { normalize(); }
  void normalize() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<Rat> c_;
};

struct PolyDivMod {
  Poly quotient;
  Poly remainder;
};

inline PolyDivMod poly_divmod(const Poly& a, const Poly& b) {
  auto [quo, rem] = a.divmod_vectors(b);
  return {Poly::from_coefficients(std::move(quo)), Poly::from_coefficients(std::move(rem))};
}

struct PolyXgcd {
  Poly g, u, v;  // g == a u + b v, g monic unless zero
};

inline PolyXgcd poly_xgcd(Poly a, Poly b) {
  Poly r0 = std::move(a), r1 = std::move(b);
  Poly u0{Rat(1)}, u1, v0, v1{Rat(1)};
  while (!r1.is_zero()) {
    auto [q, r] = poly_divmod(r0, r1);
    Poly nu = u0 - q * u1;
    Poly nv = v0 - q * v1;
    r0 = std::move(r1);
    r1 = std::move(r);
    u0 = std::move(u1);
    u1 = std::move(nu);
    v0 = std::move(v1);
    v1 = std::move(nv);
  }
  if (r0.is_zero()) return {r0, u0, v0};
  Rat lead = r0.leading();
  return {r0.scaled(Rat(1) / lead), u0.scaled(Rat(1) / lead), v0.scaled(Rat(1) / lead)};
}

// Inverse of p in Q[t]/(f); exists iff gcd(p, f) == 1.
inline Poly poly_inverse_mod(const Poly& p, const Poly& f) {
  PolyXgcd x = poly_xgcd(p, f);
  if (x.g.degree() != 0) throw domain_error("polynomial is not invertible modulo f");
  return x.u.mod(f);
}

namespace detail {

// f reduced mod p as small nonnegative ints, little-endian
inline std::vector<int> reduce_mod_p(const Poly& f, int p) {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(f.degree() + 1));
  for (const Rat& q : f.coefficients()) {
    Int n = rat_num(q) % p;
    if (n < 0) n += p;
    out.push_back(static_cast<int>(n));
  }
  while (!out.empty() && out.back() == 0) out.pop_back();
  return out;
}

inline std::vector<int> modpoly_mod(std::vector<int> rem, const std::vector<int>& div, int p) {
  // inverse of the divisor's leading coefficient mod p, by scanning
  int lead = div.back();
  int lead_inv = 0;
  for (int i = 1; i < p; ++i)
    if (i * lead % p == 1) {
      lead_inv = i;
      break;
    }
  while (rem.size() >= div.size()) {
    int factor = static_cast<int>(static_cast<long long>(rem.back()) * lead_inv % p);
    std::size_t shift = rem.size() - div.size();
    for (std::size_t i = 0; i < div.size(); ++i) {
      long long v = rem[shift + i] - static_cast<long long>(factor) * div[i];
      rem[shift + i] = static_cast<int>(((v % p) + p) % p);
    }
    while (!rem.empty() && rem.back() == 0) rem.pop_back();
  }
  return rem;
}

// all monic polynomials of the given degree over F_p, odometer order
inline bool next_modpoly(std::vector<int>& c, int p) {
  for (std::size_t i = 0; i + 1 < c.size(); ++i) {
    if (++c[i] < p) return true;
    c[i] = 0;
  }
  return false;
}

inline bool irreducible_mod_p(const std::vector<int>& f, int p) {
  int deg = static_cast<int>(f.size()) - 1;
  for (int d = 1; d <= deg / 2; ++d) {
    std::vector<int> div(static_cast<std::size_t>(d + 1), 0);
    div.back() = 1;
    do {
      if (modpoly_mod(f, div, p).empty()) return false;
    } while (next_modpoly(div, p));
  }
  return true;
}

}  // namespace detail

// One-sided irreducibility certificate over Q for monic integer f. Rational
// root search settles degree <= 3 completely; beyond that, irreducibility
// modulo any prime lifts. Failing to certify either way is an error: callers
// must not build a field on an unverified modulus.
inline bool poly_irreducible_over_Q(const Poly& f) {
  if (!f.is_monic() || !f.has_integer_coefficients())
    throw domain_error("irreducibility test expects a monic integer polynomial");
  int deg = f.degree();
  if (deg < 1) throw domain_error("constant polynomial cannot define an extension");
  if (deg == 1) return true;

  // integer roots divide the constant term (monic), and 0 is a root iff the
  // constant term vanishes
  Int c0 = rat_num(f.coefficient(0));
  if (c0 == 0) return false;
  Int bound = c0 < 0 ? -c0 : c0;
  auto has_integer_root = [&]() {
    for (Int d = 1; d * d <= bound; ++d) {
      if (bound % d != 0) continue;
      Int other = bound / d;
      for (const Int& cand : {d, other})
        if (f.eval(Rat(cand)) == 0 || f.eval(Rat(-cand)) == 0) return true;
    }
    return false;
  };
  if (deg <= 3) {
    // a reducible monic cubic or quadratic has an integer root; the scan is
    // complete, so keep it affordable
    if (bound > Int(1000000000000LL))
      throw domain_error("irreducibility over Q could not be established for this modulus");
    return !has_integer_root();
  }
  if (bound <= 1000000 && has_integer_root()) return false;

  for (int p : {2, 3, 5, 7, 11, 13, 17, 19, 23}) {
    std::vector<int> fp = detail::reduce_mod_p(f, p);
    if (static_cast<int>(fp.size()) - 1 != deg) continue;  // cannot happen for monic f
    if (detail::irreducible_mod_p(fp, p)) return true;
  }
  throw domain_error("irreducibility over Q could not be established for this modulus");
}

}  // namespace malcev
