#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "malcev/matrix.hpp"
#include "malcev/poly.hpp"
#include "malcev/sampling.hpp"

namespace malcev {

enum class DivisionStatus { division_ring, zero_divisors, unknown };

class CyclicAlgebra;
class AlgebraElement;
using AlgebraPtr = std::shared_ptr<const CyclicAlgebra>;

// Crossed-product algebra of a degree-n field extension K = Q[v]/(f) with a
// generator sigma of its automorphism group and a structure constant a:
// basis v^i u^j with u v = sigma(v) u and u^n = a. Factory-validated; an
// instance that exists has an irreducible modulus, a sigma of order exactly
// n, and (checked at build time) center Q.
class CyclicAlgebra : public std::enable_shared_from_this<CyclicAlgebra> {
public:
  static AlgebraPtr make(Poly f, Poly sigma_image, Rat a,
                         DivisionStatus claimed = DivisionStatus::unknown,
                         std::string name = "custom");
  static AlgebraPtr preset(const std::string& name);
  static std::vector<std::string> preset_names() { return {"lam-14-16", "quaternion"}; }

  int degree() const { return n_; }
  int dimension() const { return n_ * n_; }
  const Poly& modulus() const { return f_; }
  const Poly& sigma_image() const { return sigma_; }
  const Rat& structure_constant() const { return a_; }
  const std::string& name() const { return name_; }
  DivisionStatus division_status() const { return status_; }
  const std::optional<std::pair<std::vector<Rat>, std::vector<Rat>>>& zero_divisor_pair() const {
    return zero_divisor_;
  }

  std::size_t coord_index(int vpow, int upow) const {
    return static_cast<std::size_t>(vpow) +
           static_cast<std::size_t>(n_) * static_cast<std::size_t>(upow);
  }

  // sigma^j(v^q) reduced mod f
  const Poly& sigma_power(int j, int q) const {
    return sigma_pow_[static_cast<std::size_t>(j)][static_cast<std::size_t>(q)];
  }

  const Poly& v_power(int i) const { return v_pow_[static_cast<std::size_t>(i)]; }

  AlgebraElement element(std::vector<Rat> coords) const;
  AlgebraElement zero() const;
  AlgebraElement one() const;
  AlgebraElement scalar(Rat r) const;
  AlgebraElement gen_v() const;
  AlgebraElement gen_u() const;
  AlgebraElement from_poly(const Poly& p) const;  // p(v)

private:
  CyclicAlgebra() = default;

  int n_ = 0;
  Poly f_;
  Poly sigma_;
  Rat a_;
  std::string name_;
  DivisionStatus status_ = DivisionStatus::unknown;
  std::optional<std::pair<std::vector<Rat>, std::vector<Rat>>> zero_divisor_;
  std::vector<std::vector<Poly>> sigma_pow_;
  std::vector<Poly> v_pow_;
};

class AlgebraElement {
public:
  AlgebraElement(AlgebraPtr algebra, std::vector<Rat> coords)
      : alg_(std::move(algebra)), coords_(std::move(coords)) {
    if (!alg_) throw domain_error("element requires an algebra");
    if (coords_.size() != static_cast<std::size_t>(alg_->dimension()))
      throw domain_error("coordinate vector has the wrong length");
  }

  const AlgebraPtr& algebra() const { return alg_; }
  const std::vector<Rat>& coords() const { return coords_; }

  bool is_zero() const {
    for (const Rat& q : coords_)
      if (q != 0) return false;
    return true;
  }

  bool operator==(const AlgebraElement& rhs) const {
    check_same(rhs);
    return coords_ == rhs.coords_;
  }

  AlgebraElement operator+(const AlgebraElement& rhs) const {
    check_same(rhs);
    std::vector<Rat> out = coords_;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += rhs.coords_[i];
    return AlgebraElement(alg_, std::move(out));
  }

  AlgebraElement operator-(const AlgebraElement& rhs) const { return *this + rhs.scaled(Rat(-1)); }

  AlgebraElement scaled(const Rat& s) const {
    std::vector<Rat> out = coords_;
    for (Rat& q : out) q *= s;
    return AlgebraElement(alg_, std::move(out));
  }

  // (v^i u^j)(v^q u^l) = v^i sigma^j(v^q) u^{j+l}, with u^n folded into a
  AlgebraElement operator*(const AlgebraElement& rhs) const {
    check_same(rhs);
    int n = alg_->degree();
    std::vector<Rat> out(static_cast<std::size_t>(alg_->dimension()), Rat(0));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const Rat& xc = coords_[alg_->coord_index(i, j)];
        if (xc == 0) continue;
        for (int q = 0; q < n; ++q) {
          Poly vpart = (alg_->v_power(i) * alg_->sigma_power(j, q)).mod(alg_->modulus());
          for (int l = 0; l < n; ++l) {
            const Rat& yc = rhs.coords_[alg_->coord_index(q, l)];
            if (yc == 0) continue;
            int upow = j + l;
            Rat factor = xc * yc;
            if (upow >= n) {
              upow -= n;
              factor *= alg_->structure_constant();
            }
            for (int k = 0; k <= vpart.degree(); ++k)
              out[alg_->coord_index(k, upow)] += factor * vpart.coefficient(k);
          }
        }
      }
    return AlgebraElement(alg_, std::move(out));
  }

  // columns are x * e_k, so (x y) == L_x applied to y's coordinates
  QMatrix left_regular_matrix() const { return regular_matrix(true); }
  QMatrix right_regular_matrix() const { return regular_matrix(false); }

  AlgebraElement inverse() const {
    if (is_zero()) throw domain_error("zero is not invertible");
    QMatrix lm = left_regular_matrix();
    std::vector<Rat> e0(static_cast<std::size_t>(alg_->dimension()), Rat(0));
    e0[0] = 1;
    auto sol = lm.solve(e0);
    if (!sol) throw domain_error("element is not invertible in this algebra");
    AlgebraElement inv(alg_, std::move(*sol));
    if (!((*this * inv).coords() == e0 && (inv * *this).coords() == e0))
      throw violation_error("one-sided inverse failed the two-sided check");
    return inv;
  }

  AlgebraElement pow(long long e) const {
    AlgebraElement base = e < 0 ? inverse() : *this;
    long long k = e < 0 ? -e : e;
    AlgebraElement acc = alg_->one();
    for (long long i = 0; i < k; ++i) acc = acc * base;
    return acc;
  }

  // monic minimal polynomial over Q, from the first linear dependence among
  // the powers
  Poly min_poly() const {
    std::vector<std::vector<Rat>> powers{alg_->one().coords()};
    AlgebraElement p = alg_->one();
    for (int k = 1; k <= alg_->dimension() + 1; ++k) {
      p = p * *this;
      QMatrix m(powers.front().size(), powers.size());
      for (std::size_t c = 0; c < powers.size(); ++c)
        for (std::size_t r = 0; r < powers[c].size(); ++r) m.at(r, c) = powers[c][r];
      if (auto combo = m.solve(p.coords())) {
        std::vector<Rat> coeffs(static_cast<std::size_t>(k + 1), Rat(0));
        for (std::size_t i = 0; i < combo->size(); ++i) coeffs[i] = -(*combo)[i];
        coeffs[static_cast<std::size_t>(k)] = 1;
        return Poly::from_coefficients(std::move(coeffs));
      }
      powers.push_back(p.coords());
    }
    throw violation_error("no minimal polynomial found within the dimension bound");
  }

  int field_degree() const { return min_poly().degree(); }

private:
  void check_same(const AlgebraElement& rhs) const {
    if (alg_ == rhs.alg_) return;
    if (alg_->modulus() == rhs.alg_->modulus() && alg_->sigma_image() == rhs.alg_->sigma_image() &&
        alg_->structure_constant() == rhs.alg_->structure_constant())
      return;
    throw domain_error("elements from different algebras cannot be combined");
  }

  QMatrix regular_matrix(bool left) const {
    int dim = alg_->dimension();
    QMatrix m(static_cast<std::size_t>(dim), static_cast<std::size_t>(dim));
    for (int k = 0; k < dim; ++k) {
      std::vector<Rat> basis(static_cast<std::size_t>(dim), Rat(0));
      basis[static_cast<std::size_t>(k)] = 1;
      AlgebraElement e(alg_, std::move(basis));
      AlgebraElement prod = left ? (*this * e) : (e * *this);
      for (int r = 0; r < dim; ++r)
        m.at(static_cast<std::size_t>(r), static_cast<std::size_t>(k)) =
            prod.coords()[static_cast<std::size_t>(r)];
    }
    return m;
  }

  AlgebraPtr alg_;
  std::vector<Rat> coords_;
};

inline AlgebraElement CyclicAlgebra::element(std::vector<Rat> coords) const {
  return AlgebraElement(shared_from_this(), std::move(coords));
}

inline AlgebraElement CyclicAlgebra::zero() const {
  return element(std::vector<Rat>(static_cast<std::size_t>(dimension()), Rat(0)));
}

inline AlgebraElement CyclicAlgebra::scalar(Rat r) const {
  std::vector<Rat> c(static_cast<std::size_t>(dimension()), Rat(0));
  c[0] = std::move(r);
  return element(std::move(c));
}

inline AlgebraElement CyclicAlgebra::one() const { return scalar(Rat(1)); }

inline AlgebraElement CyclicAlgebra::gen_v() const {
  std::vector<Rat> c(static_cast<std::size_t>(dimension()), Rat(0));
  c[coord_index(1, 0)] = 1;
  return element(std::move(c));
}

inline AlgebraElement CyclicAlgebra::gen_u() const {
  std::vector<Rat> c(static_cast<std::size_t>(dimension()), Rat(0));
  c[coord_index(0, 1)] = 1;
  return element(std::move(c));
}

inline AlgebraElement CyclicAlgebra::from_poly(const Poly& p) const {
  Poly r = p.mod(f_);
  std::vector<Rat> c(static_cast<std::size_t>(dimension()), Rat(0));
  for (int k = 0; k <= r.degree(); ++k) c[coord_index(k, 0)] = r.coefficient(k);
  return element(std::move(c));
}

inline AlgebraElement eval_poly_at(const Poly& p, const AlgebraElement& x) {
  AlgebraElement acc = x.algebra()->zero();
  for (int k = p.degree(); k >= 0; --k)
    acc = acc * x + x.algebra()->scalar(p.coefficient(k));
  return acc;
}

inline std::vector<std::vector<Rat>> coord_rows(const std::vector<AlgebraElement>& elems) {
  std::vector<std::vector<Rat>> rows;
  rows.reserve(elems.size());
  for (const AlgebraElement& e : elems) rows.push_back(e.coords());
  return rows;
}

// Nullspace of the stacked commutation constraints (L_s - R_s) x == 0 over
// all generators, as a canonical basis.
inline std::vector<AlgebraElement> centralizer_basis(const AlgebraPtr& alg,
                                                     const std::vector<AlgebraElement>& gens) {
  std::size_t dim = static_cast<std::size_t>(alg->dimension());
  QMatrix stacked(dim * gens.size(), dim);
  for (std::size_t gi = 0; gi < gens.size(); ++gi) {
    QMatrix l = gens[gi].left_regular_matrix();
    QMatrix r = gens[gi].right_regular_matrix();
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j) stacked.at(gi * dim + i, j) = l.at(i, j) - r.at(i, j);
  }
  std::vector<AlgebraElement> out;
  for (auto& v : span_basis(stacked.nullspace())) out.push_back(alg->element(std::move(v)));
  return out;
}

inline std::vector<AlgebraElement> center_basis(const AlgebraPtr& alg) {
  return centralizer_basis(alg, {alg->gen_v(), alg->gen_u()});
}

// 1, x, ..., x^{deg-1}: an F-basis of F(x)
inline std::vector<AlgebraElement> power_basis(const AlgebraElement& x) {
  int d = x.min_poly().degree();
  std::vector<AlgebraElement> basis{x.algebra()->one()};
  AlgebraElement p = x.algebra()->one();
  for (int k = 1; k < d; ++k) {
    p = p * x;
    basis.push_back(p);
  }
  return basis;
}

namespace detail {

inline std::optional<Int> integer_nth_root(const Int& m, int n) {
  if (m < 0) return std::nullopt;
  if (m == 0) return Int(0);
  Int lo = 0, hi = m + 1;
  while (lo + 1 < hi) {
    Int mid = (lo + hi) / 2;
    Int p = 1;
    bool over = false;
    for (int i = 0; i < n && !over; ++i) {
      p *= mid;
      if (p > m) over = true;
    }
    if (over)
      hi = mid;
    else
      lo = mid;
  }
  Int p = 1;
  for (int i = 0; i < n; ++i) p *= lo;
  return p == m ? std::optional<Int>(lo) : std::nullopt;
}

// rational lambda with lambda^n == a, if one exists
inline std::optional<Rat> rational_nth_root(const Rat& a, int n) {
  bool negative = a < 0;
  if (negative && n % 2 == 0) return std::nullopt;
  Int num = rat_num(a), den = rat_den(a);
  if (num < 0) num = -num;
  auto rn = integer_nth_root(num, n);
  auto rd = integer_nth_root(den, n);
  if (!rn || !rd) return std::nullopt;
  Rat root(*rn, *rd);
  return negative ? Rat(-root) : root;
}

}  // namespace detail

inline AlgebraPtr CyclicAlgebra::make(Poly f, Poly sigma_image, Rat a, DivisionStatus claimed,
                                      std::string name) {
  int n = f.degree();
  if (n < 2) throw domain_error("modulus must have degree at least 2");
  if (!f.is_monic() || !f.has_integer_coefficients())
    throw domain_error("modulus must be monic with integer coefficients");
  if (!poly_irreducible_over_Q(f)) throw domain_error("modulus is reducible over Q");
  sigma_image = sigma_image.mod(f);
  if (!f.compose_mod(sigma_image, f).is_zero())
    throw domain_error("sigma image is not a root of the modulus");
  if (a == 0) throw domain_error("structure constant must be nonzero");

  // sigma must have order exactly n
  std::vector<Poly> powers_of_sigma{Poly::variable()};
  Poly s = sigma_image;
  for (int k = 1; k < n; ++k) {
    if (s == Poly::variable()) throw domain_error("sigma has order smaller than the degree");
    powers_of_sigma.push_back(s);
    s = s.compose_mod(sigma_image, f);
  }
  if (!(s == Poly::variable())) throw domain_error("sigma does not have order equal to the degree");

  auto alg = std::shared_ptr<CyclicAlgebra>(new CyclicAlgebra());
  alg->n_ = n;
  alg->f_ = std::move(f);
  alg->sigma_ = std::move(sigma_image);
  alg->a_ = std::move(a);
  alg->name_ = std::move(name);

  alg->v_pow_.reserve(static_cast<std::size_t>(n));
  Poly vp = Poly::constant(Rat(1));
  for (int i = 0; i < n; ++i) {
    alg->v_pow_.push_back(vp);
    vp = (vp * Poly::variable()).mod(alg->f_);
  }
  alg->sigma_pow_.resize(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    auto& row = alg->sigma_pow_[static_cast<std::size_t>(j)];
    row.reserve(static_cast<std::size_t>(n));
    Poly acc = Poly::constant(Rat(1));
    for (int q = 0; q < n; ++q) {
      row.push_back(acc);
      acc = (acc * powers_of_sigma[static_cast<std::size_t>(j)]).mod(alg->f_);
    }
  }

  // a rational n-th root of a gives an explicit zero divisor pair:
  // (u - r)(u^{n-1} + r u^{n-2} + ... + r^{n-1}) telescopes to a - r^n = 0
  if (auto root = detail::rational_nth_root(alg->a_, n)) {
    if (claimed == DivisionStatus::division_ring)
      throw domain_error("claimed division algebra has an explicit zero divisor");
    std::vector<Rat> left(static_cast<std::size_t>(n * n), Rat(0));
    left[alg->coord_index(0, 1)] = 1;
    left[alg->coord_index(0, 0)] = -*root;
    std::vector<Rat> right(static_cast<std::size_t>(n * n), Rat(0));
    Rat rp(1);
    for (int j = n - 1; j >= 0; --j) {
      right[alg->coord_index(0, j)] = rp;
      rp *= *root;
    }
    alg->status_ = DivisionStatus::zero_divisors;
    alg->zero_divisor_ = std::make_pair(std::move(left), std::move(right));
  } else {
    alg->status_ = claimed;
  }

  AlgebraPtr out = alg;
  std::vector<AlgebraElement> center = center_basis(out);
  if (center.size() != 1 || !in_span(out->one().coords(), coord_rows(center)))
    throw violation_error("algebra center is larger than the ground field");
  return out;
}

inline AlgebraPtr CyclicAlgebra::preset(const std::string& name) {
  if (name == "quaternion")
    return make(Poly{Rat(1), Rat(0), Rat(1)}, Poly{Rat(0), Rat(-1)}, Rat(-1),
                DivisionStatus::division_ring, name);
  if (name == "lam-14-16")
    return make(Poly{Rat(1), Rat(-3), Rat(0), Rat(1)}, Poly{Rat(-2), Rat(0), Rat(1)}, Rat(2),
                DivisionStatus::division_ring, name);
  throw domain_error("unknown preset '" + name + "'; available: lam-14-16, quaternion");
}

struct GaloisRootSearch {
  std::vector<Poly> roots;  // integer-coefficient images, canonically ordered
  int height_reached = 0;
  bool complete = false;  // found as many roots as the degree allows
};

// All integer-coefficient r with m(r) == 0 in Q[t]/(m), by coefficient
// height: the full cube up to the start height, then one shell at a time. A
// degree-d field polynomial has at most d roots there, so the search stops
// as soon as it has them.
inline GaloisRootSearch galois_roots_of(const Poly& m, int height_start, int height_cap,
                                        std::optional<int> expected = std::nullopt) {
  int d = m.degree();
  if (d < 1) throw domain_error("root search needs a nonconstant modulus");
  if (height_start < 1 || height_cap < height_start)
    throw domain_error("bad root search heights");
  std::set<Poly> roots;
  GaloisRootSearch out;
  for (int height = height_start; height <= height_cap; ++height) {
    out.height_reached = height;
    std::vector<long long> c(static_cast<std::size_t>(d), -height);
    while (true) {
      bool fresh = height == height_start;
      for (std::size_t i = 0; i < c.size() && !fresh; ++i)
        fresh = c[i] == height || c[i] == -height;
      if (fresh) {
        std::vector<Rat> coeffs;
        coeffs.reserve(c.size());
        for (long long x : c) coeffs.emplace_back(x);
        Poly r = Poly::from_coefficients(std::move(coeffs));
        if (m.compose_mod(r, m).is_zero()) roots.insert(r);
      }
      std::size_t i = 0;
      for (; i < c.size(); ++i) {
        if (++c[i] <= height) break;
        c[i] = -height;
      }
      if (i == c.size()) break;
    }
    if (static_cast<int>(roots.size()) == d) break;
  }
  out.roots.assign(roots.begin(), roots.end());
  out.complete = static_cast<int>(out.roots.size()) == d;
  if (expected && static_cast<int>(out.roots.size()) < *expected)
    throw resource_cap_error("root search height cap " + std::to_string(height_cap) +
                             " reached with fewer roots than required");
  return out;
}

}  // namespace malcev
