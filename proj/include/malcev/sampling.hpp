#pragma once

#include <limits>
#include <random>
#include <set>

#include "malcev/series.hpp"

namespace malcev {

// Deterministic test-data source. Every draw funnels through next_below,
// which applies rejection to raw mt19937_64 output; the distribution adapters
// in <random> are implementation-defined and would break byte-identical
// output across toolchains.
class Sampler {
public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  std::uint64_t next_below(std::uint64_t n) {
    if (n == 0) throw domain_error("draw from an empty range");
    const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
    const std::uint64_t limit = max - max % n;  // multiple of n, so v % n is unbiased
    std::uint64_t v = rng_();
    while (v >= limit) v = rng_();
    return v % n;
  }

  long long int_between(long long lo, long long hi) {
    if (lo > hi) throw domain_error("empty integer range");
    return lo + static_cast<long long>(next_below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  bool coin() { return next_below(2) == 1; }

  // uniform over reduced words of exactly this length
  Word word_of_length(int rank, int len) {
    std::vector<Letter> letters;
    letters.reserve(static_cast<std::size_t>(len));
    for (int i = 0; i < len; ++i) {
      int options = i == 0 ? 2 * rank : 2 * rank - 1;
      int pick = static_cast<int>(next_below(static_cast<std::uint64_t>(options)));
      Letter forbidden = letters.empty() ? Letter(0) : static_cast<Letter>(-letters.back());
      Letter chosen = 0;
      for (int idx = 1; idx <= rank && chosen == 0; ++idx) {
        for (int sign : {+1, -1}) {
          auto l = static_cast<Letter>(sign * idx);
          if (l == forbidden) continue;
          if (pick == 0) {
            chosen = l;
            break;
          }
          --pick;
        }
      }
      letters.push_back(chosen);
    }
    return Word::from_letters(letters);
  }

  // uniform over the radius-max_len ball, by exact level counts
  Word word_up_to(int rank, int max_len, bool allow_identity) {
    std::uint64_t level = 1, total = allow_identity ? 1 : 0;
    std::vector<std::uint64_t> counts{allow_identity ? std::uint64_t(1) : 0};
    for (int len = 1; len <= max_len; ++len) {
      level = len == 1 ? std::uint64_t(2 * rank) : level * std::uint64_t(2 * rank - 1);
      counts.push_back(level);
      total += level;
    }
    std::uint64_t pick = next_below(total);
    for (int len = 0; len <= max_len; ++len) {
      if (pick < counts[static_cast<std::size_t>(len)]) return word_of_length(rank, len);
      pick -= counts[static_cast<std::size_t>(len)];
    }
    throw domain_error("unreachable word length bucket");
  }

  // nontrivial word flipped into the positive cone if needed
  Word positive_word(int rank, int max_len, int degree_cap) {
    Word w = word_up_to(rank, max_len, false);
    return magnus_positive(w, degree_cap) ? w : w.inverse();
  }

  // small nonzero rational, numerator and denominator in [1, 5]
  Rat small_rational() {
    Rat q(int_between(1, 5), int_between(1, 5));
    return coin() ? q : Rat(-q);
  }

  // small exact coefficients: +-1, +-2, 1/2
  Coeff small_coefficient() {
    switch (next_below(5)) {
      case 0: return Coeff(1);
      case 1: return Coeff(-1);
      case 2: return Coeff(2);
      case 3: return Coeff(-2);
      default: return Coeff(Rat(1, 2));
    }
  }

  // exact nonzero series with distinct support words
  Series sparse_series(const ContextPtr& ctx, int max_terms, int max_word_len) {
    int rank = ctx->twist.rank();
    int want = 1 + static_cast<int>(next_below(static_cast<std::uint64_t>(max_terms)));
    std::set<Word> support;
    int fuel = 16 * want;
    while (static_cast<int>(support.size()) < want && fuel-- > 0)
      support.insert(word_up_to(rank, max_word_len, true));
    std::vector<Term> terms;
    terms.reserve(support.size());
    for (const Word& w : support) terms.push_back(Term{small_coefficient(), w});
    return Series(ctx, std::move(terms));
  }

  // exact series whose valuation is the given word: one leading term plus a
  // few strictly larger ones
  Series series_with_valuation(const ContextPtr& ctx, const Word& valuation, int extra_terms,
                               int max_word_len) {
    int rank = ctx->twist.rank();
    std::vector<Term> terms{Term{small_coefficient(), valuation}};
    int extras = static_cast<int>(next_below(static_cast<std::uint64_t>(extra_terms + 1)));
    for (int i = 0; i < extras; ++i)
      terms.push_back(
          Term{small_coefficient(), valuation * positive_word(rank, max_word_len, ctx->order_degree_cap)});
    return Series(ctx, std::move(terms));
  }

private:
  std::mt19937_64 rng_;
};

}  // namespace malcev
