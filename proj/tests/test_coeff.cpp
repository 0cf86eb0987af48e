#include <catch2/catch_amalgamated.hpp>

#include <vector>

#include "malcev/coeff.hpp"
#include "malcev/sampling.hpp"

using namespace malcev;

namespace {

Coeff random_coeff(Sampler& rng, long long d) {
  return Coeff(rng.small_rational(), rng.coin() ? rng.small_rational() : Rat(0), d);
}

}  // namespace

TEST_CASE("quadratic discriminants must be square free") {
  REQUIRE_THROWS_AS(Coeff(Rat(1), Rat(1), 4), domain_error);
  REQUIRE_THROWS_AS(Coeff(Rat(1), Rat(1), 12), domain_error);
  REQUIRE_THROWS_AS(Coeff(Rat(1), Rat(1), 0), domain_error);
  REQUIRE_THROWS_AS(Coeff(Rat(1), Rat(1), 1), domain_error);
  REQUIRE_NOTHROW(Coeff(Rat(1), Rat(1), 5));
  REQUIRE_NOTHROW(Coeff(Rat(1), Rat(1), -1));
  REQUIRE_NOTHROW(Coeff(Rat(1), Rat(1), -5));
  // a vanishing radical part forgets the field
  REQUIRE(Coeff(Rat(2), Rat(0), 5).discriminant() == 0);
}

TEST_CASE("the square root squares to its discriminant") {
  for (long long d : {2LL, 5LL, -1LL, -3LL}) {
    Coeff r = Coeff::sqrt_of(d);
    Coeff sq = r * r;
    REQUIRE(sq.is_rational());
    REQUIRE(sq.rational_part() == d);
  }
}

TEST_CASE("coefficients from different fields refuse to mix") {
  Coeff a = Coeff::sqrt_of(2);
  Coeff b = Coeff::sqrt_of(3);
  REQUIRE_THROWS_AS(a + b, domain_error);
  REQUIRE_THROWS_AS(a * b, domain_error);
  // rationals embed into any quadratic field
  REQUIRE_NOTHROW(a + Coeff(7));
  REQUIRE((a * Coeff(2)).radical_part() == 2);
}

TEST_CASE("field laws hold on random elements") {
  Sampler rng(201);
  for (long long d : {5LL, -1LL}) {
    for (int trial = 0; trial < 120; ++trial) {
      Coeff a = random_coeff(rng, d);
      Coeff b = random_coeff(rng, d);
      Coeff c = random_coeff(rng, d);
      REQUIRE((a + b) + c == a + (b + c));
      REQUIRE(a + b == b + a);
      REQUIRE((a * b) * c == a * (b * c));
      REQUIRE(a * b == b * a);
      REQUIRE(a * (b + c) == a * b + a * c);
      REQUIRE(a + a.negated() == Coeff(0));
      REQUIRE(a - b == a + b.negated());
      if (!a.is_zero()) {
        REQUIRE(a * a.inverse() == Coeff(1));
        REQUIRE(a.inverse().inverse() == a);
      }
    }
  }
  REQUIRE_THROWS_AS(Coeff(0).inverse(), domain_error);
}

TEST_CASE("norm form stays rational") {
  Sampler rng(202);
  for (int trial = 0; trial < 100; ++trial) {
    Coeff a = random_coeff(rng, 5);
    Coeff n = a * a.applied(FieldAut::conjugation);
    REQUIRE(n.is_rational());
    Rat expect = a.rational_part() * a.rational_part() - Rat(5) * a.radical_part() * a.radical_part();
    REQUIRE(n.rational_part() == expect);
  }
}

TEST_CASE("conjugation is an involutive field automorphism") {
  Sampler rng(203);
  for (int trial = 0; trial < 100; ++trial) {
    Coeff a = random_coeff(rng, -1);
    Coeff b = random_coeff(rng, -1);
    REQUIRE((a + b).applied(FieldAut::conjugation) ==
            a.applied(FieldAut::conjugation) + b.applied(FieldAut::conjugation));
    REQUIRE((a * b).applied(FieldAut::conjugation) ==
            a.applied(FieldAut::conjugation) * b.applied(FieldAut::conjugation));
    REQUIRE(a.applied(FieldAut::conjugation).applied(FieldAut::conjugation) == a);
    REQUIRE(a.applied(FieldAut::identity) == a);
  }
  REQUIRE(compose(FieldAut::conjugation, FieldAut::conjugation) == FieldAut::identity);
  REQUIRE(compose(FieldAut::identity, FieldAut::conjugation) == FieldAut::conjugation);
  REQUIRE(inverse_of(FieldAut::conjugation) == FieldAut::conjugation);
}

TEST_CASE("rationals are fixed by conjugation") {
  Coeff q(Rat(3, 4));
  REQUIRE(q.applied(FieldAut::conjugation) == q);
  Coeff r = Coeff::sqrt_of(5);
  REQUIRE(r.applied(FieldAut::conjugation) == r.negated());
}

TEST_CASE("twists act through words by letter parity") {
  TwistSpec tw = TwistSpec::untwisted(2);
  tw.images[0] = FieldAut::conjugation;  // generator 1 conjugates, generator 2 fixes

  Word x = Word::generator(1);
  Word y = Word::generator(2);
  REQUIRE(tw.of_word(Word()) == FieldAut::identity);
  REQUIRE(tw.of_word(x) == FieldAut::conjugation);
  REQUIRE(tw.of_word(x.inverse()) == FieldAut::conjugation);
  REQUIRE(tw.of_word(x * x) == FieldAut::identity);
  REQUIRE(tw.of_word(y) == FieldAut::identity);
  REQUIRE(tw.of_word(x * y * x) == FieldAut::identity);
  REQUIRE(tw.of_word(x * y) == FieldAut::conjugation);
  REQUIRE_FALSE(tw.is_untwisted());
  REQUIRE(TwistSpec::untwisted(3).is_untwisted());
  REQUIRE(tw.rank() == 2);

  // the action is a group morphism on sampled words
  Sampler rng(204);
  for (int trial = 0; trial < 100; ++trial) {
    Word a = rng.word_up_to(2, 6, true);
    Word b = rng.word_up_to(2, 6, true);
    REQUIRE(tw.of_word(a * b) == compose(tw.of_word(a), tw.of_word(b)));
    REQUIRE(tw.of_word(a.inverse()) == inverse_of(tw.of_word(a)));
  }
}
