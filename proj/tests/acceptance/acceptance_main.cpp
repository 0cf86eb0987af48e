// Acceptance gate: one PASS/FAIL line per criterion, exact arithmetic
// throughout, nonzero exit when anything fails. Each criterion draws its own
// seeded sampler so the lines are reproducible in isolation.

#include <chrono>
#include <iostream>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "malcev/cli.hpp"

using namespace malcev;

namespace {

int g_failures = 0;

void line(int n, bool ok, const std::string& detail) {
  std::cout << (ok ? "PASS" : "FAIL") << " criterion-" << n << ": " << detail << "\n";
  if (!ok) ++g_failures;
}

// nonzero coefficients that keep the twist honest: about half carry sqrt(5)
Coeff mixed_coeff(Sampler& rng) {
  switch (rng.next_below(5)) {
    case 0: return Coeff(2);
    case 1: return Coeff(Rat(-1, 2));
    case 2: return Coeff::sqrt_of(5);
    case 3: return Coeff(1) + Coeff::sqrt_of(5);
    default: return Coeff(-2) * Coeff::sqrt_of(5);
  }
}

Series mixed_series(Sampler& rng, const ContextPtr& ctx, int max_terms, int max_len) {
  Series base = rng.sparse_series(ctx, max_terms, max_len);
  std::vector<Term> terms;
  terms.reserve(base.terms().size());
  for (const Term& t : base.terms()) terms.push_back(Term{mixed_coeff(rng), t.word});
  return Series(ctx, std::move(terms));
}

ContextPtr half_twisted_context() {
  return make_context(TwistSpec{{FieldAut::conjugation, FieldAut::identity}});
}

void criterion_valuation() {
  ContextPtr plain = make_untwisted_context(2);
  ContextPtr twisted = half_twisted_context();
  Sampler rng(11001);

  int product_failures = 0;
  for (int i = 0; i < 500; ++i) {
    const ContextPtr& ctx = i % 2 == 0 ? plain : twisted;
    Series a = mixed_series(rng, ctx, 3, 3);
    Series b = mixed_series(rng, ctx, 3, 3);
    if ((a * b).valuation() != a.valuation() * b.valuation()) ++product_failures;
  }

  int sum_failures = 0;
  for (int i = 0; i < 500; ++i) {
    const ContextPtr& ctx = i % 2 == 0 ? plain : twisted;
    Series a = mixed_series(rng, ctx, 3, 3);
    Series b = mixed_series(rng, ctx, 3, 3);
    while (b.valuation() == a.valuation()) b = mixed_series(rng, ctx, 3, 3);
    const Word& expected =
        magnus_less(a.valuation(), b.valuation()) ? a.valuation() : b.valuation();
    if ((a + b).valuation() != expected) ++sum_failures;
  }

  line(1, product_failures == 0 && sum_failures == 0,
       "valuation morphism: 500 products (" + std::to_string(product_failures) +
           " failures), 500 sums with distinct valuations (" + std::to_string(sum_failures) +
           " failures)");
}

void criterion_inversion() {
  ContextPtr plain = make_untwisted_context(2);
  ContextPtr twisted = half_twisted_context();
  Sampler rng(11002);

  int failures = 0;
  for (int i = 0; i < 200; ++i) {
    const ContextPtr& ctx = i % 2 == 0 ? plain : twisted;
    Series a = mixed_series(rng, ctx, 3, 2);
    Series inv = a.inverted(6);
    Series one = Series::one(ctx);
    if (!agree_up_to_precision(a * inv, one) || !agree_up_to_precision(inv * a, one))
      ++failures;
  }

  line(2, failures == 0,
       "division-ring evidence: 200 random series inverted at depth 6, both-sided products "
       "match 1 (" +
           std::to_string(failures) + " failures)");
}

void criterion_order_laws() {
  auto t0 = std::chrono::steady_clock::now();
  int cap = kDefaultOrderDegreeCap;

  std::vector<Word> ball3, ball2;
  WordBall b3 = WordBall::whole_group(2, 3, 1 << 20);
  for (const auto& [w, edge] : b3.members()) {
    (void)edge;
    ball3.push_back(w);
  }
  WordBall b2 = WordBall::whole_group(2, 2, 1 << 20);
  for (const auto& [w, edge] : b2.members()) {
    (void)edge;
    ball2.push_back(w);
  }

  int fails = 0;
  long long checks = 0;

  // trichotomy and antisymmetry over the whole length-3 ball
  std::map<std::pair<Word, Word>, Ord> table;
  for (const Word& u : ball3)
    for (const Word& w : ball3) table[{u, w}] = magnus_compare(u, w, cap);
  for (const Word& u : ball3)
    for (const Word& w : ball3) {
      ++checks;
      Ord uw = table[{u, w}];
      Ord wu = table[{w, u}];
      if (u == w) {
        if (uw != Ord::equal || wu != Ord::equal) ++fails;
      } else if (!((uw == Ord::less && wu == Ord::greater) ||
                   (uw == Ord::greater && wu == Ord::less))) {
        ++fails;
      }
    }

  // bi-invariance: translate every strict pair by every word of length <= 2
  for (const Word& u : ball3)
    for (const Word& w : ball3) {
      if (table[{u, w}] != Ord::less) continue;
      for (const Word& t : ball2) {
        checks += 2;
        if (!magnus_less(t * u, t * w, cap)) ++fails;
        if (!magnus_less(u * t, w * t, cap)) ++fails;
      }
    }

  // transitivity, exhaustive over the length-2 ball
  std::map<std::pair<Word, Word>, Ord> small;
  for (const Word& u : ball2)
    for (const Word& w : ball2) small[{u, w}] = magnus_compare(u, w, cap);
  for (const Word& u : ball2)
    for (const Word& w : ball2)
      for (const Word& t : ball2) {
        ++checks;
        if (small[{u, w}] != Ord::greater && small[{w, t}] != Ord::greater &&
            small[{u, t}] == Ord::greater)
          ++fails;
      }

  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                std::chrono::steady_clock::now() - t0)
                .count();
  line(3, fails == 0 && ms < 10000,
       "order laws on the rank-2 ball (" + std::to_string(ball3.size()) + " words, " +
           std::to_string(checks) + " checks, " + std::to_string(fails) + " failures) in " +
           std::to_string(ms) + " ms");
}

void criterion_center() {
  ContextPtr ctx = make_untwisted_context(2);
  Sampler rng(11004);

  int scalar_failures = 0;
  for (int i = 0; i < 100; ++i) {
    Series c = Series::scalar(ctx, mixed_coeff(rng));
    Series s = mixed_series(rng, ctx, 3, 3);
    if (!(c * s - s * c).is_exact_zero()) ++scalar_failures;
  }

  Series x = Series::of_word(ctx, Word::generator(1));
  Series y = Series::of_word(ctx, Word::generator(2));
  int nonscalar_failures = 0;
  for (int i = 0; i < 100; ++i) {
    Series s = mixed_series(rng, ctx, 3, 3);
    bool nonscalar = false;
    for (const Term& t : s.terms())
      if (!t.word.is_identity()) nonscalar = true;
    if (!nonscalar) {
      s = s + Series::of_word(ctx, rng.word_of_length(2, 1 + static_cast<int>(rng.next_below(3))));
      nonscalar = true;
    }
    bool moved =
        !(x * s - s * x).is_exact_zero() || !(y * s - s * y).is_exact_zero();
    if (!moved) ++nonscalar_failures;
  }

  line(4, scalar_failures == 0 && nonscalar_failures == 0,
       "center: 100 scalars commute exactly (" + std::to_string(scalar_failures) +
           " failures), 100 non-scalar series each move under a generator (" +
           std::to_string(nonscalar_failures) + " failures)");
}

void criterion_probe() {
  ContextPtr ctx = make_untwisted_context(2);
  Sampler rng(11005);
  Word h = Word::generator(1);

  int violations = 0, inconclusive = 0, reverify_failures = 0;
  for (int i = 0; i < 100; ++i) {
    Word v;
    do {
      v = rng.word_up_to(2, 3, false);
    } while (power_exponent(v, h).has_value());
    Series gamma = rng.series_with_valuation(ctx, v, 2, 2);

    SelfInvarianceProbe p = self_invariance_probe(gamma, h, -3, 3, 8);
    if (!p.violation) {
      ++inconclusive;  // windows may hide support; never counted as a failure
      continue;
    }
    ++violations;

    // independent replay: rebuild the conjugate at the reported exponent with
    // a different inversion depth and re-test membership from scratch
    Series lambda = gamma * Series::of_word(ctx, h.pow(p.exponent)) * gamma.inverted(9);
    LaurentVerdict verdict = laurent_membership(lambda, h);
    bool off_leading = !power_exponent(lambda.valuation(), h).has_value();
    if (!p.side.has_value() || verdict.kind != LaurentKind::no || !off_leading)
      ++reverify_failures;
  }

  line(5, violations >= 95 && reverify_failures == 0,
       "self-invariance probe, h = x: " + std::to_string(violations) +
           "/100 violations (threshold 95), " + std::to_string(inconclusive) +
           " inconclusive, " + std::to_string(reverify_failures) + " replay failures");
}

void criterion_chain() {
  ContextPtr ctx = make_untwisted_context(2);
  Sampler rng(11006);
  ChainReport rep = chain_report(ctx, Word::generator(1), 3, 5, 200, rng, 1000000, 5);

  bool ok = rep.ok && rep.levels.size() == 3;
  std::string sizes;
  for (const LevelEvidence& l : rep.levels) {
    ok = ok && l.subset_of_previous && l.samples == 200 && l.morphism_failures == 0 &&
         l.certificate_failures == 0 && l.erasure_failures == 0;
    if (!sizes.empty()) sizes += "/";
    sizes += std::to_string(l.ball_size);
  }

  line(6, ok,
       "normal-closure chain g = x, depth 3, ball 5: level sizes " + sizes +
           ", 200 samples per level, all inclusion and normality checks clean");
}

void criterion_cubic_preset() {
  AlgebraPtr lam = CyclicAlgebra::preset("lam-14-16");
  bool ok = lam->dimension() == 9;

  SubfieldReport ru = subfield_report(lam->gen_u(), 2, 6);
  ok = ok && ru.degree == 3 && ru.maximal && ru.roots.roots.size() == 1 &&
       ru.realized.empty() && ru.unrealized_roots.empty() && ru.self_invariant;
  for (const Poly& r : ru.roots.roots)
    ok = ok && (r - Poly::variable()).mod(ru.min_poly).is_zero();

  SubfieldReport rv = subfield_report(lam->gen_v(), 1, 2);
  ok = ok && rv.degree == 3 && rv.maximal && rv.roots.complete && rv.realized.size() == 2 &&
       !rv.self_invariant;
  Poly sigma{Rat(-2), Rat(0), Rat(1)};
  bool sigma_realized = false;
  for (const ConjugacyWitness& cw : rv.realized) {
    if ((cw.root - sigma).mod(rv.min_poly).is_zero()) sigma_realized = true;
    ok = ok &&
         cw.witness * lam->gen_v() == eval_poly_at(cw.root, lam->gen_v()) * cw.witness;
  }
  ok = ok && sigma_realized;

  line(7, ok,
       "cubic preset: dim 9; Q(u) maximal with trivial Galois and self-invariant; Q(v) has "
       "both nontrivial roots realized by conjugation, hence not self-invariant");
}

void criterion_quaternion() {
  AlgebraPtr quat = CyclicAlgebra::preset("quaternion");
  SubfieldReport rv = subfield_report(quat->gen_v(), 1, 2);

  bool ok = rv.degree == 2 && rv.maximal && rv.roots.complete && rv.realized.size() == 1 &&
            !rv.self_invariant;
  if (!rv.realized.empty()) {
    const ConjugacyWitness& cw = rv.realized.front();
    ok = ok && (cw.root - Poly{Rat(0), Rat(-1)}).mod(rv.min_poly).is_zero();
    ok = ok &&
         cw.witness * quat->gen_v() == eval_poly_at(cw.root, quat->gen_v()) * cw.witness;
  }

  Sampler rng(11008);
  SpanClosureReport span = span_closure(power_basis(quat->gen_v()), quat->gen_u(), rng, 50);
  ok = ok && span.dim_over_F == 4 && span.multiplicatively_closed &&
       span.division_samples == 50 && span.division_failures == 0;

  line(8, ok,
       "quaternions: Q(v) maximal, not self-invariant with a conjugation witness; span of "
       "Q(v) and u has dim 4 = 2^2, closed under products and inverses on 50 samples");
}

void criterion_autocommutator() {
  bool ok = true;
  int probed = 0;
  for (const char* preset : {"quaternion", "lam-14-16"}) {
    AlgebraPtr alg = CyclicAlgebra::preset(preset);
    for (const AlgebraElement& w : {alg->gen_v(), alg->gen_u()}) {
      SubfieldReport rep = subfield_report(w, 1, 3);
      if (!rep.maximal || rep.realized.empty()) continue;  // trivial Galois, nothing to probe
      for (const ConjugacyWitness& cw : rep.realized) {
        AutocommutatorResult ar = autocommutator_probe(w, cw.root, 6);
        ++probed;
        ok = ok && ar.quotient.degree() >= 1;

        // the reported quotient must match an actual conjugation in the algebra
        AlgebraElement qw = eval_poly_at(ar.witness, w);
        AlgebraElement tau_qw = cw.witness * qw * cw.witness.inverse();
        ok = ok && qw.inverse() * tau_qw == eval_poly_at(ar.quotient, w);

        // hilbert 90 direction: the quotient's norm along the tau-orbit is 1
        AlgebraElement norm = alg->one();
        Poly image = ar.quotient;
        for (int k = 0; k < rep.degree; ++k) {
          norm = norm * eval_poly_at(image, w);
          image = image.compose_mod(cw.root, rep.min_poly);
        }
        ok = ok && norm == alg->one();
      }
    }
  }
  ok = ok && probed == 4;

  line(9, ok,
       "autocommutator: " + std::to_string(probed) +
           " realized Galois roots probed across both presets, every quotient lands outside "
           "the ground field and has norm 1");
}

AlgebraElement random_nonzero(Sampler& rng, const AlgebraPtr& alg) {
  for (;;) {
    std::vector<Rat> coords(static_cast<std::size_t>(alg->dimension()), Rat(0));
    bool any = false;
    for (Rat& c : coords)
      if (rng.coin()) {
        c = rng.small_rational();
        any = true;
      }
    if (any) return AlgebraElement(alg, std::move(coords));
  }
}

void criterion_conjugation_stability() {
  Sampler rng(11010);
  struct Case {
    const char* preset;
    bool use_v;
    int h1, h2;
  };
  const Case cases[] = {{"quaternion", true, 1, 2},
                        {"quaternion", false, 1, 2},
                        {"lam-14-16", true, 1, 2},
                        {"lam-14-16", false, 1, 3}};

  int checks = 0, mismatches = 0;
  for (const Case& c : cases) {
    AlgebraPtr alg = CyclicAlgebra::preset(c.preset);
    AlgebraElement w = c.use_v ? alg->gen_v() : alg->gen_u();
    SubfieldReport base = subfield_report(w, c.h1, c.h2);
    for (int i = 0; i < 20; ++i) {
      AlgebraElement g = random_nonzero(rng, alg);
      SubfieldReport rep = subfield_report(g * w * g.inverse(), c.h1, c.h2);
      ++checks;
      if (rep.self_invariant != base.self_invariant) ++mismatches;
    }
  }

  line(10, mismatches == 0,
       "conjugation stability: " + std::to_string(checks) +
           " random conjugates across 4 preset subfields, " + std::to_string(mismatches) +
           " self-invariance flips");
}

void criterion_determinism() {
  const std::vector<std::vector<std::string>> commands = {
      {"--format", "structured", "--seed", "9", "chain", "--g", "x", "--depth", "2", "--ball",
       "3", "--samples", "40"},
      {"--format", "structured", "--seed", "5", "probe-selfinv", "--h", "x", "--gamma",
       "1 + y", "--lmin=-3", "--lmax", "3"},
      {"--format", "structured", "--seed", "7", "cyclic", "--preset", "quaternion", "report"},
  };

  bool ok = true;
  for (const auto& args : commands) {
    CommandResult a = run_command(args);
    CommandResult b = run_command(args);
    ok = ok && a.exit_code == b.exit_code && a.out == b.out && a.err == b.err &&
         !a.out.empty();
  }

  line(11, ok, "determinism: 3 structured commands rerun with fixed seeds, byte-identical");
}

}  // namespace

int main() {
  struct Entry {
    int n;
    void (*run)();
  };
  const Entry entries[] = {
      {1, criterion_valuation},  {2, criterion_inversion},
      {3, criterion_order_laws}, {4, criterion_center},
      {5, criterion_probe},      {6, criterion_chain},
      {7, criterion_cubic_preset}, {8, criterion_quaternion},
      {9, criterion_autocommutator}, {10, criterion_conjugation_stability},
      {11, criterion_determinism},
  };
  for (const Entry& e : entries) {
    try {
      e.run();
    } catch (const std::exception& ex) {
      line(e.n, false, std::string("unexpected exception: ") + ex.what());
    }
  }
  return g_failures == 0 ? 0 : 1;
}
