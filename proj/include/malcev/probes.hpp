#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "malcev/series.hpp"

namespace malcev {

// Where the conjugate's off-subgroup leading position sits relative to the
// original off part, measured by comparing v(eps h^l) with v(lambda eps).
enum class ViolationSide { lambda_side_lower, lambda_side_higher, tie };

struct SelfInvarianceProbe {
  Word h;
  Series gamma;
  Series on_part;   // terms of gamma supported on powers of h
  Series off_part;  // the rest
  bool violation = false;
  long long exponent = 0;  // the l that produced the violation
  std::optional<Series> conjugate_series;
  std::optional<LaurentVerdict> verdict;  // verdict at the violating l
  std::optional<ViolationSide> side;
};

// Conjugates powers of h by gamma and looks for a stored term outside the
// Laurent subring of h. A found witness is definite; finding none is
// inconclusive, the window may hide one.
inline SelfInvarianceProbe self_invariance_probe(const Series& gamma, const Word& h,
                                                 long long lmin, long long lmax, int depth) {
  if (!magnus_positive(h, gamma.context()->order_degree_cap))
    throw domain_error("probe needs a strictly positive h");
  if (lmin > lmax) throw domain_error("empty exponent range");

  LaurentSplit split = split_by_laurent(gamma, h);
  SelfInvarianceProbe probe{h,           gamma,        std::move(split.on),
                            std::move(split.off), false, 0,
                            std::nullopt, std::nullopt, std::nullopt};

  const ContextPtr& ctx = gamma.context();
  int cap = ctx->order_degree_cap;
  Series gamma_inv = gamma.inverted(depth);  // validates gamma is invertible

  for (long long l = lmin; l <= lmax; ++l) {
    Series lambda = gamma * Series::of_word(ctx, h.pow(l)) * gamma_inv;
    LaurentVerdict verdict = laurent_membership(lambda, h);
    if (verdict.kind != LaurentKind::no) continue;

    probe.violation = true;
    probe.exponent = l;
    probe.conjugate_series = lambda;
    probe.verdict = verdict;
    // a stored off-subgroup witness in lambda forces a nonempty off part:
    // a Laurent gamma conjugates powers of h into powers of h
    Series eps_shift = probe.off_part * Series::of_word(ctx, h.pow(l));
    Series lambda_eps = lambda * probe.off_part;
    Ord ord = magnus_compare(lambda_eps.valuation(), eps_shift.valuation(), cap);
    probe.side = ord == Ord::less    ? ViolationSide::lambda_side_lower
                 : ord == Ord::greater ? ViolationSide::lambda_side_higher
                                       : ViolationSide::tie;
    return probe;
  }
  return probe;
}

struct NormalizationStep {
  Word k;          // conjugator shape 1 + c k
  Coeff c;
  Word cancelled;  // the off-subgroup word this step removed
};

struct NormalizationReport {
  bool laurent_within_precision = false;
  std::optional<Word> residual_word;  // least off-subgroup word still stored
  std::vector<NormalizationStep> steps;
  Series beta;        // accumulated conjugator
  Series conjugated;  // beta alpha beta^-1
  std::optional<LaurentVerdict> verdict;
};

namespace detail {

inline std::optional<Term> least_off_term(const Series& s, const Word& h) {
  for (const Term& t : s.terms())
    if (!power_exponent(t.word, h)) return t;
  return std::nullopt;
}

}  // namespace detail

// Greedy conjugation toward the Laurent subring of h = v(alpha): each step
// conjugates by 1 + c k, with k placed so the first-order commutator term
// lands on the least stored off-subgroup word and c solved to cancel it. A
// step is kept only if that least off word strictly rises, so the loop can
// fail honestly (budget, or no candidate helps) but never loops. The working
// series is trimmed to positions below h^(depth+1) after every step; each
// conjugation otherwise multiplies the stored support, and everything the
// trim hides is above the precision the report claims anyway.
inline NormalizationReport cohn_normalize(const Series& alpha, int budget, int depth) {
  const ContextPtr& ctx = alpha.context();
  int cap = ctx->order_degree_cap;
  const Word h = alpha.valuation();
  if (!magnus_positive(h, cap))
    throw domain_error("normalization needs a series with strictly positive valuation");

  const Word horizon = h.pow(depth + 1);
  NormalizationReport report{false,           std::nullopt,
                             {},              Series::one(ctx),
                             alpha.truncated(horizon), std::nullopt};

  for (int step = 0; step < budget; ++step) {
    auto off = detail::least_off_term(report.conjugated, h);
    if (!off) break;

    // first-order cancellation sites: for every stored Laurent term b h^m,
    //   k = g0 h^-m  puts  (c k)(b h^m)  at g0 with coefficient c sigma_k(b),
    //   k = h^-m g0  puts  (b h^m)(c k)  at g0 with coefficient b sigma_{h^m}(c)
    std::vector<std::pair<Word, Coeff>> candidates;
    for (const Term& t : report.conjugated.terms()) {
      if (!power_exponent(t.word, h)) continue;
      const Word& hm = t.word;
      const Coeff& b = t.coefficient;
      Word left = off->word * hm.inverse();
      Word right = hm.inverse() * off->word;
      FieldAut tw_left = ctx->twist.of_word(left);
      candidates.emplace_back(left, off->coefficient.negated() * b.inverse().applied(tw_left));
      FieldAut tw_hm = ctx->twist.of_word(hm);
      candidates.emplace_back(right, (off->coefficient * b.inverse()).applied(tw_hm));
    }

    bool advanced = false;
    for (const auto& [k, c] : candidates) {
      if (k.is_identity() || c.is_zero()) continue;
      Series conj = Series::one(ctx) + Series::single(ctx, c, k);
      Series next = conjugate(conj, report.conjugated, depth).truncated(horizon);
      auto next_off = detail::least_off_term(next, h);
      if (next_off && !magnus_less(off->word, next_off->word, cap)) continue;
      report.steps.push_back(NormalizationStep{k, c, off->word});
      report.beta = conj * report.beta;
      report.conjugated = std::move(next);
      advanced = true;
      break;
    }
    if (!advanced) break;
  }

  auto residual = detail::least_off_term(report.conjugated, h);
  report.laurent_within_precision = !residual.has_value();
  if (residual) report.residual_word = residual->word;
  report.verdict = laurent_membership(report.conjugated, h);
  return report;
}

}  // namespace malcev
