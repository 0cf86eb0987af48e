#pragma once

#include <deque>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "malcev/word.hpp"

namespace malcev {

// How a ball member was first reached: member == parent * (conjugator g^sign conjugator^-1).
struct BallEdge {
  Word parent;
  Word conjugator;
  int sign;
};

// Length-bounded slice of one level of the normal-closure chain of g.
// Depth 0 is the plain ball of the free group; depth n+1 collects products of
// powers of g conjugated by members of the depth-n ball, length-capped at
// every step. Each member beyond the identity records the edge that first
// reached it, so membership comes with a constructive derivation.
class WordBall {
public:
  // every reduced word of length <= length_bound
  static WordBall whole_group(int rank, int length_bound, std::size_t state_budget) {
    if (rank < 1 || rank > kMaxGenerators) throw domain_error("ball rank out of range");
    if (length_bound < 0) throw domain_error("negative ball radius");
    WordBall ball;
    ball.depth_ = 0;
    ball.length_bound_ = length_bound;
    std::deque<Word> frontier;
    ball.members_.emplace(Word(), std::nullopt);
    frontier.push_back(Word());
    while (!frontier.empty()) {
      Word w = std::move(frontier.front());
      frontier.pop_front();
      if (static_cast<int>(w.length()) == length_bound) continue;
      for (int idx = 1; idx <= rank; ++idx) {
        for (int sign : {+1, -1}) {
          Word next = w * Word::generator(idx, sign);
          if (next.length() <= w.length()) continue;  // cancellation walks backwards
          if (ball.members_.emplace(next, std::nullopt).second) {
            if (ball.members_.size() > state_budget)
              throw resource_cap_error("ball state budget exceeded at depth 0");
            frontier.push_back(std::move(next));
          }
        }
      }
    }
    return ball;
  }

  // conjugated powers c g^{+-1} c^-1, conjugators from the previous level
  static WordBall next_level(const WordBall& prev, const Word& g, std::size_t state_budget) {
    if (g.is_identity()) throw domain_error("normal closure of the identity is trivial");
    WordBall ball;
    ball.depth_ = prev.depth_ + 1;
    ball.length_bound_ = prev.length_bound_;
    ball.generator_ = g;

    // several conjugators can reduce to the same word; the first one in
    // member order wins, which keeps the construction deterministic
    struct Step {
      Word word;
      Word conjugator;
      int sign;
    };
    std::vector<Step> steps;
    std::map<Word, bool> seen;
    for (const auto& [c, edge] : prev.members_) {
      (void)edge;
      for (int sign : {+1, -1}) {
        Word conj = conjugated(c, sign > 0 ? g : g.inverse());
        if (conj.is_identity()) continue;
        if (seen.emplace(conj, true).second) steps.push_back(Step{conj, c, sign});
      }
    }

    std::deque<Word> frontier;
    ball.members_.emplace(Word(), std::nullopt);
    frontier.push_back(Word());
    while (!frontier.empty()) {
      Word w = std::move(frontier.front());
      frontier.pop_front();
      for (const Step& s : steps) {
        Word next = w * s.word;
        if (static_cast<int>(next.length()) > ball.length_bound_) continue;
        if (ball.members_.emplace(next, BallEdge{w, s.conjugator, s.sign}).second) {
          if (ball.members_.size() > state_budget)
            throw resource_cap_error("ball state budget exceeded at depth " + std::to_string(ball.depth_));
          frontier.push_back(std::move(next));
        }
      }
    }
    return ball;
  }

  int depth() const { return depth_; }
  int length_bound() const { return length_bound_; }

  const Word& closure_generator() const {
    if (depth_ == 0) throw domain_error("depth-0 ball has no closure generator");
    return generator_;
  }

  bool contains(const Word& w) const { return members_.contains(w); }
  std::size_t size() const { return members_.size(); }
  const std::map<Word, std::optional<BallEdge>>& members() const { return members_; }

  bool subset_of(const WordBall& other) const {
    for (const auto& [w, edge] : members_) {
      (void)edge;
      if (!other.contains(w)) return false;
    }
    return true;
  }

  // (conjugator, sign) factors whose conjugated powers of g multiply to w,
  // in product order. Only meaningful at depth >= 1.
  std::vector<std::pair<Word, int>> derivation(const Word& w) const {
    if (depth_ == 0) throw domain_error("depth-0 membership carries no derivation");
    auto it = members_.find(w);
    if (it == members_.end()) throw domain_error("word is not a recorded ball member");
    std::vector<std::pair<Word, int>> factors;
    Word cur = w;
    while (true) {
      auto cur_it = members_.find(cur);
      if (!cur_it->second.has_value()) break;  // reached the identity
      const BallEdge& e = *cur_it->second;
      factors.emplace_back(e.conjugator, e.sign);
      cur = e.parent;
    }
    std::reverse(factors.begin(), factors.end());
    return factors;
  }

private:
  int depth_ = 0;
  int length_bound_ = 0;
  Word generator_;
  std::map<Word, std::optional<BallEdge>> members_;
};

// Exact membership in the normal closure of a single generator: delete every
// occurrence of that generator and reduce; membership iff nothing is left.
inline bool in_generator_closure(const Word& w, int gen_index) {
  std::vector<Letter> rest;
  for (Letter l : w.letters()) {
    if (l == gen_index || -l == gen_index) continue;
    rest.push_back(l);
  }
  return Word::from_letters(rest).is_identity();
}

// Constructive form of the same test: w == prod_j p_j x^{s_j} p_j^-1 where
// p_j is the product of the generator-free segments before the j-th
// occurrence. Valid exactly when the erasure image reduces to the identity.
inline std::optional<std::vector<std::pair<Word, int>>> generator_closure_factors(
    const Word& w, int gen_index) {
  std::vector<std::pair<Word, int>> factors;
  std::vector<Letter> prefix;  // generator-free letters seen so far
  for (Letter l : w.letters()) {
    if (l == gen_index || -l == gen_index) {
      factors.emplace_back(Word::from_letters(prefix), l > 0 ? +1 : -1);
    } else {
      prefix.push_back(l);
    }
  }
  if (!Word::from_letters(prefix).is_identity()) return std::nullopt;
  return factors;
}

}  // namespace malcev
