#pragma once

#include <memory>
#include <utility>
#include <vector>

#include "malcev/ball.hpp"
#include "malcev/sampling.hpp"
#include "malcev/series.hpp"

namespace malcev {

struct Certificate;

struct CertificateFactor {
  Word conjugator;
  int sign;
  // proves the conjugator belongs one level down; null at depth 1, where
  // conjugators are unconstrained
  std::shared_ptr<const Certificate> conjugator_certificate;
};

// Constructive membership proof for one level of the normal-closure chain of
// g: the member is a product of conjugated powers c g^{+-1} c^-1, and at
// depth >= 2 every conjugator carries its own certificate one level down.
// Replay is purely syntactic word arithmetic.
struct Certificate {
  Word member;
  int depth = 0;  // depth 0 certifies nothing; every word belongs
  std::vector<CertificateFactor> factors;

  bool replay(const Word& g) const {
    if (depth == 0) return true;
    Word product;
    for (const CertificateFactor& f : factors) {
      if (f.sign != 1 && f.sign != -1) return false;
      product = product * conjugated(f.conjugator, f.sign > 0 ? g : g.inverse());
      if (depth >= 2) {
        if (!f.conjugator_certificate) return false;
        if (f.conjugator_certificate->depth != depth - 1) return false;
        if (f.conjugator_certificate->member != f.conjugator) return false;
        if (!f.conjugator_certificate->replay(g)) return false;
      }
    }
    return product == member;
  }
};

// Certificate for a product of two members of the same level: concatenating
// the factor lists multiplies the certified words.
inline std::shared_ptr<const Certificate> concatenated_certificate(
    const std::shared_ptr<const Certificate>& lhs, const std::shared_ptr<const Certificate>& rhs) {
  if (!lhs || !rhs) throw domain_error("certificate concatenation needs both halves");
  if (lhs->depth != rhs->depth) throw domain_error("certificate depths differ");
  Certificate out;
  out.member = lhs->member * rhs->member;
  out.depth = lhs->depth;
  out.factors = lhs->factors;
  out.factors.insert(out.factors.end(), rhs->factors.begin(), rhs->factors.end());
  return std::make_shared<const Certificate>(std::move(out));
}

// Transport along conjugation: w (c g^s c^-1) w^-1 = (w c) g^s (w c)^-1, so
// conjugating every factor's conjugator certifies w member w^-1. At depth
// >= 2 the new conjugators w c need certificates one level down, built by
// concatenating a certificate for w with the factor's own.
inline Certificate conjugated_certificate(const Certificate& cert, const Word& w,
                                          const std::shared_ptr<const Certificate>& w_cert) {
  Certificate out;
  out.member = conjugated(w, cert.member);
  out.depth = cert.depth;
  if (cert.depth == 0) return out;
  if (cert.depth >= 2) {
    if (!w_cert) throw domain_error("conjugator certificate required at this depth");
    if (w_cert->depth != cert.depth - 1) throw domain_error("conjugator certificate at wrong depth");
    if (w_cert->member != w) throw domain_error("conjugator certificate proves the wrong word");
  }
  out.factors.reserve(cert.factors.size());
  for (const CertificateFactor& f : cert.factors) {
    CertificateFactor nf;
    nf.conjugator = w * f.conjugator;
    nf.sign = f.sign;
    if (cert.depth >= 2)
      nf.conjugator_certificate = concatenated_certificate(w_cert, f.conjugator_certificate);
    out.factors.push_back(std::move(nf));
  }
  return out;
}

// Balls for levels 0..max_depth of the normal-closure chain of g, plus
// certificate extraction from the recorded derivations.
class ClosureChain {
public:
  ClosureChain(int rank, Word g, int max_depth, int length_bound, std::size_t state_budget)
      : g_(std::move(g)) {
    if (g_.is_identity()) throw domain_error("normal-closure chain of the identity is trivial");
    if (max_depth < 1) throw domain_error("chain depth must be at least 1");
    levels_.push_back(WordBall::whole_group(rank, length_bound, state_budget));
    for (int d = 1; d <= max_depth; ++d)
      levels_.push_back(WordBall::next_level(levels_.back(), g_, state_budget));
  }

  const Word& g() const { return g_; }
  int max_depth() const { return static_cast<int>(levels_.size()) - 1; }
  const WordBall& level(int depth) const {
    if (depth < 0 || depth > max_depth()) throw domain_error("chain level out of range");
    return levels_[static_cast<std::size_t>(depth)];
  }

  // Builds the certificate recursively from ball derivations; conjugators at
  // depth d are members of the depth d-1 ball by construction.
  std::shared_ptr<const Certificate> certificate(const Word& w, int depth) const {
    if (depth == 0) {
      Certificate c;
      c.member = w;
      return std::make_shared<const Certificate>(std::move(c));
    }
    auto key = std::make_pair(depth, w);
    auto hit = cache_.find(key);
    if (hit != cache_.end()) return hit->second;
    Certificate c;
    c.member = w;
    c.depth = depth;
    for (const auto& [conj, sign] : level(depth).derivation(w)) {
      CertificateFactor f;
      f.conjugator = conj;
      f.sign = sign;
      if (depth >= 2) f.conjugator_certificate = certificate(conj, depth - 1);
      c.factors.push_back(std::move(f));
    }
    auto out = std::make_shared<const Certificate>(std::move(c));
    cache_.emplace(std::move(key), out);
    return out;
  }

private:
  Word g_;
  std::vector<WordBall> levels_;
  mutable std::map<std::pair<int, Word>, std::shared_ptr<const Certificate>> cache_;
};

// Valuation-based membership evidence for a series at one chain level. The
// finite ball can only say yes: a miss is inconclusive, never a refutation.
inline std::optional<Certificate> chain_member_certificate(const Series& alpha,
                                                           const ClosureChain& chain, int depth) {
  const Word& v = alpha.valuation();  // zero and indeterminate series throw here
  if (!chain.level(depth).contains(v)) return std::nullopt;
  return *chain.certificate(v, depth);
}

struct LevelEvidence {
  int depth = 0;
  std::size_t ball_size = 0;
  bool subset_of_previous = false;
  int samples = 0;
  int morphism_failures = 0;     // v(beta alpha beta^-1) != v(beta) v(alpha) v(beta)^-1
  int certificate_failures = 0;  // transported certificate failed replay
  int erasure_checks = 0;        // exact depth-1 oracle runs (single-generator g only)
  int erasure_failures = 0;
};

struct ChainReport {
  Word g;
  int length_bound = 0;
  int max_depth = 0;
  std::vector<LevelEvidence> levels;
  bool ok = false;
};

// Evidence that each chain level normalizes in the next one up: sampled
// series conjugations must move valuations the way the group morphism says,
// and the moved valuation must carry a transported certificate that replays.
// Any failure here falsifies the construction and is a hard error for the
// caller to surface.
inline ChainReport chain_report(const ContextPtr& ctx, const Word& g, int max_depth,
                                int length_bound, int samples_per_level, Sampler& sampler,
                                std::size_t state_budget, int invert_depth) {
  int rank = ctx->twist.rank();
  ClosureChain chain(rank, g, max_depth, length_bound, state_budget);

  ChainReport report;
  report.g = g;
  report.length_bound = length_bound;
  report.max_depth = max_depth;
  report.ok = true;

  int erasure_generator = 0;
  if (g.length() == 1 && g.letters().front() > 0) erasure_generator = g.letters().front();

  for (int depth = 1; depth <= max_depth; ++depth) {
    const WordBall& ball = chain.level(depth);
    LevelEvidence ev;
    ev.depth = depth;
    ev.ball_size = ball.size();
    ev.subset_of_previous = ball.subset_of(chain.level(depth - 1));
    if (!ev.subset_of_previous) report.ok = false;

    std::vector<Word> members;
    members.reserve(ball.size());
    for (const auto& [w, edge] : ball.members()) {
      (void)edge;
      if (!w.is_identity()) members.push_back(w);
    }
    std::vector<Word> conjugators;
    for (const auto& [w, edge] : chain.level(depth - 1).members()) {
      (void)edge;
      conjugators.push_back(w);
    }

    for (int s = 0; s < samples_per_level && !members.empty(); ++s) {
      ++ev.samples;
      const Word& va = members[sampler.next_below(members.size())];
      Series alpha = sampler.series_with_valuation(ctx, va, 2, 3);
      Word vb = depth == 1 ? sampler.word_up_to(rank, length_bound, true)
                           : conjugators[sampler.next_below(conjugators.size())];
      Series beta = sampler.series_with_valuation(ctx, vb, 2, 3);

      Series lambda = conjugate(beta, alpha, invert_depth);
      Word expected = conjugated(vb, va);
      if (lambda.valuation() != expected) {
        ++ev.morphism_failures;
        report.ok = false;
        continue;
      }

      auto base = chain.certificate(va, depth);
      auto vb_cert = depth >= 2 ? chain.certificate(vb, depth - 1) : nullptr;
      Certificate moved = conjugated_certificate(*base, vb, vb_cert);
      if (moved.member != expected || !moved.replay(g)) {
        ++ev.certificate_failures;
        report.ok = false;
      }

      if (depth == 1 && erasure_generator != 0) {
        ++ev.erasure_checks;
        if (!in_generator_closure(expected, erasure_generator)) {
          ++ev.erasure_failures;
          report.ok = false;
        }
      }
    }
    report.levels.push_back(std::move(ev));
  }
  return report;
}

}  // namespace malcev
