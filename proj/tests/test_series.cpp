#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <vector>

#include "malcev/sampling.hpp"
#include "malcev/series.hpp"

using namespace malcev;

namespace {

// Reference product: accumulate a_g sigma_g(b_h) at g h in a plain map, no
// sorting tricks, no windows. Exact inputs only.
Series ref_product(const Series& a, const Series& b) {
  REQUIRE(a.precision().is_exact());
  REQUIRE(b.precision().is_exact());
  const ContextPtr& ctx = a.context();
  std::map<Word, Coeff> acc;  // shortlex keys, order irrelevant here
  for (const Term& ta : a.terms()) {
    FieldAut twist = ctx->twist.of_word(ta.word);
    for (const Term& tb : b.terms()) {
      Word w = ta.word * tb.word;
      Coeff c = ta.coefficient * tb.coefficient.applied(twist);
      auto it = acc.find(w);
      if (it == acc.end())
        acc.emplace(std::move(w), std::move(c));
      else
        it->second = it->second + c;
    }
  }
  std::vector<Term> terms;
  for (auto& [w, c] : acc)
    if (!c.is_zero()) terms.push_back(Term{c, w});
  return Series(ctx, std::move(terms));
}

Series nonzero_sparse(Sampler& rng, const ContextPtr& ctx) {
  while (true) {
    Series s = rng.sparse_series(ctx, 3, 3);
    if (s.has_stored_terms()) return s;
  }
}

ContextPtr twisted_context() {
  TwistSpec tw = TwistSpec::untwisted(2);
  tw.images[0] = FieldAut::conjugation;
  return make_context(tw);
}

// sparse series over Q(sqrt 5) so the twist has something to act on
Series radical_series(Sampler& rng, const ContextPtr& ctx) {
  std::vector<Term> terms;
  int n = static_cast<int>(rng.int_between(1, 3));
  for (int i = 0; i < n; ++i)
    terms.push_back(Term{Coeff(rng.small_rational(), rng.small_rational(), 5),
                         rng.word_up_to(2, 3, true)});
  return Series(ctx, std::move(terms));
}

}  // namespace

TEST_CASE("canonical form merges, drops zeros, and sorts by the group order") {
  ContextPtr ctx = make_untwisted_context(2);
  Word x = Word::generator(1);
  Word y = Word::generator(2);

  Series s(ctx, {Term{Coeff(2), x}, Term{Coeff(3), x}, Term{Coeff(1), y}, Term{Coeff(-1), y}});
  REQUIRE(s.terms().size() == 1);  // x merged, y cancelled outright
  REQUIRE(s.coefficient_at(x) == Coeff(5));
  REQUIRE_FALSE(s.coefficient_at(y).has_value());

  Series t(ctx, {Term{Coeff(1), x}, Term{Coeff(1), Word()}, Term{Coeff(1), y}});
  for (std::size_t i = 0; i + 1 < t.terms().size(); ++i)
    REQUIRE(magnus_less(t.terms()[i].word, t.terms()[i + 1].word));
  // pinned order: 1 < y < x
  REQUIRE(t.terms()[0].word == Word());
  REQUIRE(t.terms()[1].word == y);
  REQUIRE(t.terms()[2].word == x);

  REQUIRE_THROWS_AS(Series(ctx, {Term{Coeff(1), Word::generator(3)}}), domain_error);
}

TEST_CASE("ring laws on random exact series") {
  for (const ContextPtr& ctx : {make_untwisted_context(2), twisted_context()}) {
    Sampler rng(301);
    for (int trial = 0; trial < 60; ++trial) {
      Series a = rng.sparse_series(ctx, 3, 3);
      Series b = rng.sparse_series(ctx, 3, 3);
      Series c = rng.sparse_series(ctx, 3, 3);
      REQUIRE(a + b == b + a);
      REQUIRE((a + b) + c == a + (b + c));
      REQUIRE((a * b) * c == a * (b * c));
      REQUIRE(a * (b + c) == a * b + a * c);
      REQUIRE((a + b) * c == a * c + b * c);
      REQUIRE(a * Series::one(ctx) == a);
      REQUIRE(Series::one(ctx) * a == a);
      REQUIRE(a + a.negated() == Series::zero(ctx));
      REQUIRE((a - b) + b == a);
    }
  }
}

TEST_CASE("products match the reference convolution") {
  ContextPtr plain = make_untwisted_context(2);
  Sampler rng(302);
  for (int trial = 0; trial < 80; ++trial) {
    Series a = rng.sparse_series(plain, 4, 3);
    Series b = rng.sparse_series(plain, 4, 3);
    REQUIRE(a * b == ref_product(a, b));
  }
  ContextPtr tw = twisted_context();
  for (int trial = 0; trial < 80; ++trial) {
    Series a = radical_series(rng, tw);
    Series b = radical_series(rng, tw);
    REQUIRE(a * b == ref_product(a, b));
  }
}

TEST_CASE("the twist crosses coefficients past words") {
  ContextPtr ctx = twisted_context();
  Word x = Word::generator(1);
  Word y = Word::generator(2);
  Coeff r = Coeff::sqrt_of(5);

  // x sqrt5 = -sqrt5 x, y sqrt5 = sqrt5 y
  Series left = Series::of_word(ctx, x) * Series::scalar(ctx, r);
  REQUIRE(left == Series::single(ctx, r.negated(), x));
  Series lefty = Series::of_word(ctx, y) * Series::scalar(ctx, r);
  REQUIRE(lefty == Series::single(ctx, r, y));
  // x^2 restores it
  Series sq = Series::of_word(ctx, x * x) * Series::scalar(ctx, r);
  REQUIRE(sq == Series::single(ctx, r, x * x));
}

TEST_CASE("twisted multiplication is still associative over the radical field") {
  ContextPtr ctx = twisted_context();
  Sampler rng(303);
  for (int trial = 0; trial < 60; ++trial) {
    Series a = radical_series(rng, ctx);
    Series b = radical_series(rng, ctx);
    Series c = radical_series(rng, ctx);
    REQUIRE((a * b) * c == a * (b * c));
  }
}

TEST_CASE("valuation is a group morphism on products") {
  for (const ContextPtr& ctx : {make_untwisted_context(2), twisted_context()}) {
    Sampler rng(304);
    for (int trial = 0; trial < 150; ++trial) {
      Series a = nonzero_sparse(rng, ctx);
      Series b = nonzero_sparse(rng, ctx);
      Series p = a * b;
      REQUIRE(p.has_stored_terms());  // a division ring has no zero divisors
      REQUIRE(p.valuation() == a.valuation() * b.valuation());
      // leading coefficients multiply through the twist
      Coeff expect = a.leading_coefficient() *
                     b.leading_coefficient().applied(ctx->twist.of_word(a.valuation()));
      REQUIRE(p.leading_coefficient() == expect);
    }
  }
}

TEST_CASE("valuation of a sum with distinct valuations is the smaller one") {
  ContextPtr ctx = make_untwisted_context(2);
  Sampler rng(305);
  int checked = 0;
  while (checked < 150) {
    Series a = nonzero_sparse(rng, ctx);
    Series b = nonzero_sparse(rng, ctx);
    Ord ord = magnus_compare(a.valuation(), b.valuation());
    if (ord == Ord::equal) continue;
    ++checked;
    const Word& expect = ord == Ord::less ? a.valuation() : b.valuation();
    REQUIRE((a + b).valuation() == expect);
  }
}

TEST_CASE("valuation errors distinguish zero from unknown") {
  ContextPtr ctx = make_untwisted_context(2);
  REQUIRE_THROWS_AS(Series::zero(ctx).valuation(), zero_valuation_error);
  Series hidden(ctx, {}, Precision::above(Word::generator(1)));
  REQUIRE_THROWS_AS(hidden.valuation(), indeterminate_valuation_error);
}

TEST_CASE("windows survive canonicalization and addition takes the coarser one") {
  ContextPtr ctx = make_untwisted_context(2);
  Word x = Word::generator(1);
  Word y = Word::generator(2);

  // terms above the window bound are not storable and get dropped
  Series s(ctx, {Term{Coeff(1), Word()}, Term{Coeff(1), x * x}}, Precision::above(x));
  REQUIRE(s.terms().size() == 1);
  REQUIRE(s.terms().front().word == Word());
  REQUIRE(s.precision() == Precision::above(x));

  Series a = Series::one(ctx).with_window(Precision::above(x));
  Series b = Series::of_word(ctx, y).with_window(Precision::above(x * x));
  Series sum = a + b;
  // y < x, so the y term is visible under the coarser window above x
  REQUIRE(sum.precision() == Precision::above(x));
  REQUIRE(sum.coefficient_at(y).has_value());
}

TEST_CASE("truncation keeps terms strictly below the cutoff") {
  ContextPtr ctx = make_untwisted_context(2);
  Word x = Word::generator(1);
  Series geo = Series::one(ctx) + Series::of_word(ctx, x) + Series::of_word(ctx, x * x) +
               Series::of_word(ctx, x * x * x);
  Series cut = geo.truncated(x * x);
  REQUIRE(cut.terms().size() == 2);
  REQUIRE(cut.precision() == Precision::above(x));
  // an already finer window is kept
  Series windowed = geo.with_window(Precision::above(x * x * x));
  Series cut2 = windowed.truncated(x.pow(5));
  REQUIRE(cut2 == windowed);
}

TEST_CASE("inversion of a monomial is exact") {
  ContextPtr ctx = twisted_context();
  Word x = Word::generator(1);
  Series m = Series::single(ctx, Coeff(Rat(2), Rat(1), 5), x);
  Series inv = m.inverted(3);
  REQUIRE(inv.precision().is_exact());
  REQUIRE(m * inv == Series::one(ctx));
  REQUIRE(inv * m == Series::one(ctx));
}

TEST_CASE("the geometric inverse of 1 - x is pinned") {
  ContextPtr ctx = make_untwisted_context(2);
  Word x = Word::generator(1);
  Series s = Series::one(ctx) - Series::of_word(ctx, x);
  Series inv = s.inverted(3);
  REQUIRE(inv.terms().size() == 4);
  for (int i = 0; i <= 3; ++i) {
    REQUIRE(inv.terms()[static_cast<std::size_t>(i)].word == x.pow(i));
    REQUIRE(inv.terms()[static_cast<std::size_t>(i)].coefficient == Coeff(1));
  }
  REQUIRE(inv.precision() == Precision::above(x.pow(3)));
}

TEST_CASE("random series invert up to their precision") {
  for (const ContextPtr& ctx : {make_untwisted_context(2), twisted_context()}) {
    Sampler rng(306);
    for (int trial = 0; trial < 60; ++trial) {
      Series a = nonzero_sparse(rng, ctx);
      Series inv = a.inverted(4);
      REQUIRE(agree_up_to_precision(a * inv, Series::one(ctx)));
      REQUIRE(agree_up_to_precision(inv * a, Series::one(ctx)));
    }
  }
  ContextPtr ctx = make_untwisted_context(2);
  REQUIRE_THROWS_AS(Series::zero(ctx).inverted(2), zero_valuation_error);
  REQUIRE_THROWS_AS(Series::one(ctx).inverted(-1), domain_error);
}

TEST_CASE("agreement is judged under the coarser window") {
  ContextPtr ctx = make_untwisted_context(2);
  Word x = Word::generator(1);
  Series a = Series::one(ctx) + Series::of_word(ctx, x);
  Series b = Series::one(ctx);
  REQUIRE_FALSE(agree_up_to_precision(a, b));
  // the same pair agrees once a window hides the difference
  REQUIRE(agree_up_to_precision(a.with_window(Precision::above(Word())),
                                b.with_window(Precision::above(Word()))));
  REQUIRE(agree_up_to_precision(a, a));
}

TEST_CASE("conjugation agrees with its defining product") {
  ContextPtr ctx = make_untwisted_context(2);
  Sampler rng(307);
  for (int trial = 0; trial < 40; ++trial) {
    Series by = nonzero_sparse(rng, ctx);
    Series s = rng.sparse_series(ctx, 3, 3);
    Series conj = conjugate(by, s, 4);
    // multiply back: (by s by^-1) by agrees with by s wherever both see
    REQUIRE(agree_up_to_precision(conj * by, by * s));
  }
}

TEST_CASE("laurent membership sees powers of h and nothing else") {
  ContextPtr ctx = make_untwisted_context(2);
  Word x = Word::generator(1);
  Word y = Word::generator(2);

  Series in = Series::one(ctx) + Series::of_word(ctx, x.pow(2)) + Series::of_word(ctx, x.pow(-1));
  LaurentVerdict v1 = laurent_membership(in, x);
  REQUIRE(v1.kind == LaurentKind::yes);
  REQUIRE(v1.passes());

  Series out = in + Series::of_word(ctx, x * y);
  LaurentVerdict v2 = laurent_membership(out, x);
  REQUIRE(v2.kind == LaurentKind::no);
  REQUIRE(v2.witness == x * y);
  REQUIRE_FALSE(v2.passes());

  LaurentVerdict v3 = laurent_membership(in.with_window(Precision::above(x.pow(2))), x);
  REQUIRE(v3.kind == LaurentKind::indeterminate_beyond_precision);
  REQUIRE(v3.passes());

  REQUIRE_THROWS_AS(laurent_membership(in, Word()), domain_error);

  // powers of a composite h count as on-subgroup
  Word h = x * y;
  Series comp = Series::of_word(ctx, h.pow(3)) + Series::of_word(ctx, h.pow(-2));
  REQUIRE(laurent_membership(comp, h).kind == LaurentKind::yes);
}

TEST_CASE("laurent split partitions the stored terms") {
  ContextPtr ctx = make_untwisted_context(2);
  Word x = Word::generator(1);
  Sampler rng(308);
  for (int trial = 0; trial < 60; ++trial) {
    Series s = rng.sparse_series(ctx, 4, 3);
    LaurentSplit split = split_by_laurent(s, x);
    REQUIRE(split.on + split.off == s);
    REQUIRE(laurent_membership(split.on, x).passes());
    for (const Term& t : split.off.terms()) REQUIRE_FALSE(power_exponent(t.word, x).has_value());
  }
}
