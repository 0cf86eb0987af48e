#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "malcev/cyclic.hpp"

namespace malcev {

// Invertible x with x w x^{-1} == r(w), if one exists. The conjugation
// condition x w == r(w) x is linear in x, so candidates come from the
// nullspace of R_w - L_{r(w)}; in a division algebra any nonzero solution is
// already invertible.
inline std::optional<AlgebraElement> conjugation_realizer(const AlgebraElement& w, const Poly& r) {
  const AlgebraPtr& alg = w.algebra();
  AlgebraElement rw = eval_poly_at(r, w);
  std::size_t dim = static_cast<std::size_t>(alg->dimension());
  QMatrix rm = w.right_regular_matrix();
  QMatrix lm = rw.left_regular_matrix();
  QMatrix diff(dim, dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) diff.at(i, j) = rm.at(i, j) - lm.at(i, j);
  std::vector<std::vector<Rat>> null = diff.nullspace();
  std::vector<std::vector<Rat>> candidates = null;
  if (null.size() > 1) {
    std::vector<Rat> sum(dim, Rat(0));
    for (const auto& v : null)
      for (std::size_t i = 0; i < dim; ++i) sum[i] += v[i];
    candidates.push_back(std::move(sum));
  }
  for (auto& c : candidates) {
    AlgebraElement x = alg->element(std::move(c));
    if (x.is_zero()) continue;
    try {
      AlgebraElement xinv = x.inverse();
      if (!(x * w * xinv == rw))
        throw violation_error("conjugation solution failed the exact recheck");
      return x;
    } catch (const domain_error&) {
      // singular candidate; keep looking
    }
  }
  return std::nullopt;
}

struct ConjugacyWitness {
  Poly root;               // image of the generator, as a polynomial in it
  AlgebraElement witness;  // invertible x with x w x^{-1} == root(w)
};

struct SubfieldReport {
  AlgebraElement generator;
  Poly min_poly;
  int degree = 0;
  int centralizer_dim = 0;
  bool maximal = false;
  GaloisRootSearch roots;
  std::vector<ConjugacyWitness> realized;  // nontrivial roots hit by conjugation
  std::vector<Poly> unrealized_roots;
  bool self_invariant = false;  // no unit conjugates the subfield nontrivially onto itself
};

// Everything the workbench knows about Q(w) inside the algebra: its degree,
// whether it is maximal (centralizer equal to itself), which roots of its
// minimal polynomial live in Q(w), and which of those are induced by
// conjugation. A conjugation that maps Q(w) into itself must send w to such
// a root, so the realized list decides self-invariance once the root list is
// known in full. The root search enumerates integer coefficient vectors up to
// height_cap, which covers every root whenever Z[w] is the full ring of
// integers (true for both built-in presets); for other generators a root with
// non-integer rational coordinates would be missed and self_invariant is then
// evidence up to the reported height rather than a proof.
inline SubfieldReport subfield_report(const AlgebraElement& w, int height_start, int height_cap) {
  const AlgebraPtr& alg = w.algebra();
  SubfieldReport rep{w, w.min_poly(), 0, 0, false, {}, {}, {}, false};
  rep.degree = rep.min_poly.degree();
  if (rep.degree < 1) throw domain_error("subfield generator has no minimal polynomial");

  std::vector<AlgebraElement> cent = centralizer_basis(alg, {w});
  std::vector<AlgebraElement> powers = power_basis(w);
  rep.centralizer_dim = static_cast<int>(cent.size());
  rep.maximal = same_span(coord_rows(cent), coord_rows(powers));

  // double centralizer law in a central simple algebra
  if (rep.centralizer_dim * rep.degree != alg->dimension())
    throw violation_error("centralizer dimension breaks the degree product law");
  if (rep.maximal != (rep.degree == alg->degree()))
    throw violation_error("maximality disagrees with the generator degree");

  rep.roots = galois_roots_of(rep.min_poly, height_start, height_cap);
  for (const Poly& r : rep.roots.roots) {
    // identity automorphism; for a degree-1 field the variable itself
    // reduces to a constant, so compare modulo the minimal polynomial
    if ((r - Poly::variable()).mod(rep.min_poly).is_zero()) continue;
    if (auto x = conjugation_realizer(w, r))
      rep.realized.push_back(ConjugacyWitness{r, std::move(*x)});
    else
      rep.unrealized_roots.push_back(r);
  }
  rep.self_invariant = rep.realized.empty();
  return rep;
}

// x conjugates some element of the given subfield outside of it, so the
// closure construction would not be a ring
class conjugation_stability_error : public domain_error {
public:
  conjugation_stability_error(std::string msg, std::vector<Rat> escaped)
      : domain_error(std::move(msg)), escaped_coords(std::move(escaped)) {}
  std::vector<Rat> escaped_coords;
};

struct SpanClosureReport {
  std::vector<AlgebraElement> basis;  // canonical basis of the generated subring
  int dim_over_F = 0;
  int subfield_degree = 0;
  int dim_over_subfield = 0;
  bool multiplicatively_closed = false;
  int division_samples = 0;
  int division_failures = 0;
};

// Subring sum_i K x^i generated by a subfield K and an invertible x that
// stabilizes K under conjugation. Blocks K x^m are added until the span
// stops growing, which terminates the sum: once K x^m lands inside the
// earlier blocks, so does every later block.
inline SpanClosureReport span_closure(const std::vector<AlgebraElement>& k_basis,
                                      const AlgebraElement& x, Sampler& sampler, int samples) {
  if (k_basis.empty()) throw domain_error("subfield basis is empty");
  const AlgebraPtr& alg = k_basis.front().algebra();
  std::vector<std::vector<Rat>> k_rows = coord_rows(k_basis);
  if (span_rank(k_rows) != k_basis.size()) throw domain_error("subfield basis is dependent");
  if (!in_span(alg->one().coords(), k_rows)) throw domain_error("subfield does not contain 1");
  for (std::size_t i = 0; i < k_basis.size(); ++i)
    for (std::size_t j = i; j < k_basis.size(); ++j) {
      if (!(k_basis[i] * k_basis[j] == k_basis[j] * k_basis[i]))
        throw domain_error("subfield basis does not commute");
      if (!in_span((k_basis[i] * k_basis[j]).coords(), k_rows))
        throw domain_error("subfield basis is not multiplicatively closed");
    }

  AlgebraElement xinv = x.inverse();
  for (const AlgebraElement& k : k_basis) {
    AlgebraElement conj = x * k * xinv;
    if (!in_span(conj.coords(), k_rows))
      throw conjugation_stability_error("conjugation by x moves the subfield off itself",
                                        conj.coords());
  }

  std::vector<std::vector<Rat>> rows = k_rows;
  AlgebraElement xp = alg->one();
  std::size_t rank = span_rank(rows);
  while (true) {
    xp = xp * x;
    std::vector<std::vector<Rat>> grown = rows;
    for (const AlgebraElement& k : k_basis) grown.push_back((k * xp).coords());
    std::size_t next_rank = span_rank(grown);
    if (next_rank == rank) break;
    rows = std::move(grown);
    rank = next_rank;
  }

  SpanClosureReport rep;
  for (auto& v : span_basis(rows)) rep.basis.push_back(alg->element(std::move(v)));
  rep.dim_over_F = static_cast<int>(rep.basis.size());
  rep.subfield_degree = static_cast<int>(k_basis.size());
  if (rep.dim_over_F % rep.subfield_degree != 0)
    throw violation_error("closure dimension is not a multiple of the subfield degree");
  rep.dim_over_subfield = rep.dim_over_F / rep.subfield_degree;

  rep.multiplicatively_closed = true;
  std::vector<std::vector<Rat>> basis_rows = coord_rows(rep.basis);
  for (const AlgebraElement& a : rep.basis)
    for (const AlgebraElement& b : rep.basis)
      if (!in_span((a * b).coords(), basis_rows)) {
        rep.multiplicatively_closed = false;
        break;
      }

  for (int s = 0; s < samples; ++s) {
    // redraw on an all-tails draw so every requested sample tests an inverse
    AlgebraElement y = alg->zero();
    while (y.is_zero()) {
      y = alg->zero();
      for (const AlgebraElement& b : rep.basis)
        if (sampler.coin()) y = y + b.scaled(sampler.small_rational());
    }
    ++rep.division_samples;
    try {
      AlgebraElement yinv = y.inverse();
      if (!in_span(yinv.coords(), basis_rows)) ++rep.division_failures;
    } catch (const domain_error&) {
      ++rep.division_failures;
    }
  }
  return rep;
}

struct PrimitiveElement {
  AlgebraElement element;
  long long lambda = 0;
};

// Single generator for the field generated by two commuting elements, found
// as a + lambda b for the first lambda that reaches full degree.
inline PrimitiveElement primitive_element(const AlgebraElement& a, const AlgebraElement& b,
                                          long long lambda_cap = 40) {
  if (!(a * b == b * a)) throw domain_error("primitive element needs commuting generators");
  const AlgebraPtr& alg = a.algebra();

  // dimension of the subalgebra generated by a and b, by span growth
  std::vector<std::vector<Rat>> rows{alg->one().coords()};
  std::size_t rank = 1;
  while (true) {
    std::vector<std::vector<Rat>> grown = rows;
    for (const auto& rvec : rows) {
      AlgebraElement e = alg->element(rvec);
      grown.push_back((e * a).coords());
      grown.push_back((e * b).coords());
    }
    std::size_t next_rank = span_rank(grown);
    if (next_rank == rank) break;
    rows = span_basis(grown);
    rank = next_rank;
  }

  for (long long lambda = 1; lambda <= lambda_cap; ++lambda) {
    AlgebraElement c = a + b.scaled(Rat(lambda));
    if (static_cast<std::size_t>(c.field_degree()) == rank) return PrimitiveElement{c, lambda};
  }
  throw resource_cap_error("no primitive element with multiplier up to " +
                           std::to_string(lambda_cap));
}

struct AutocommutatorResult {
  Poly witness;   // q with q(w) invertible
  Poly quotient;  // q(w)^{-1} tau(q(w)) as a polynomial in w; not in the ground field
  int height_reached = 0;
};

// For the automorphism tau: w -> r(w) of Q(w), search for q with the
// quotient q(w)^{-1} tau(q(w)) outside the ground field. Candidates are
// enumerated by coefficient height. When conjugation realizes tau inside the
// algebra the quotient is cross-checked against an actual conjugation.
inline AutocommutatorResult autocommutator_probe(const AlgebraElement& w, const Poly& r,
                                                 int height_cap) {
  Poly m = w.min_poly();
  if (m.degree() < 2) throw domain_error("autocommutator probe needs a generator of degree >= 2");
  Poly rr = r.mod(m);
  if ((rr - Poly::variable()).mod(m).is_zero())
    throw domain_error("the identity automorphism has trivial quotients");
  if (!m.compose_mod(rr, m).is_zero())
    throw domain_error("the proposed image is not a root of the minimal polynomial");

  std::size_t d = static_cast<std::size_t>(m.degree());
  for (int height = 1; height <= height_cap; ++height) {
    std::vector<long long> c(d, -height);
    while (true) {
      bool fresh = height == 1;
      for (std::size_t i = 0; i < c.size() && !fresh; ++i)
        fresh = c[i] == height || c[i] == -height;
      bool all_zero = true;
      for (std::size_t i = 0; i < c.size() && all_zero; ++i) all_zero = c[i] == 0;
      if (fresh && !all_zero) {
        std::vector<Rat> coeffs;
        coeffs.reserve(c.size());
        for (long long v : c) coeffs.emplace_back(v);
        Poly q = Poly::from_coefficients(std::move(coeffs));
        Poly qinv = poly_inverse_mod(q, m);
        Poly quot = (qinv * q.compose_mod(rr, m)).mod(m);
        if (quot.degree() >= 1) {
          AlgebraElement qe = eval_poly_at(q, w);
          AlgebraElement qre = eval_poly_at(q.compose_mod(rr, m), w);
          if (!(qe * eval_poly_at(quot, w) == qre))
            throw violation_error("autocommutator quotient failed the product recheck");
          if (auto x = conjugation_realizer(w, rr)) {
            if (!(*x * qe == qre * *x))
              throw violation_error("conjugation witness disagrees with the polynomial quotient");
          }
          return AutocommutatorResult{q, quot, height};
        }
      }
      std::size_t i = 0;
      for (; i < c.size(); ++i) {
        if (++c[i] <= height) break;
        c[i] = -height;
      }
      if (i == c.size()) break;
    }
  }
  throw resource_cap_error("no autocommutator witness with coefficient height up to " +
                           std::to_string(height_cap));
}

}  // namespace malcev
