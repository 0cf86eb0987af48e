#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include "malcev/coeff.hpp"
#include "malcev/magnus.hpp"

namespace malcev {

// Parameters every series in a computation must share. Mixing contexts is an
// error, so computations cannot silently change the twist or the order cap.
struct SeriesContext {
  TwistSpec twist;
  int order_degree_cap = kDefaultOrderDegreeCap;

  bool operator==(const SeriesContext&) const = default;
};

using ContextPtr = std::shared_ptr<const SeriesContext>;

inline ContextPtr make_context(TwistSpec twist, int order_degree_cap = kDefaultOrderDegreeCap) {
  SeriesContext c;
  c.twist = std::move(twist);
  c.order_degree_cap = order_degree_cap;
  return std::make_shared<const SeriesContext>(std::move(c));
}

inline ContextPtr make_untwisted_context(int rank, int order_degree_cap = kDefaultOrderDegreeCap) {
  return make_context(TwistSpec::untwisted(rank), order_degree_cap);
}

// Exact, or "everything not stored lies strictly above this word".
class Precision {
public:
  static Precision exact() { return Precision(); }
  static Precision above(Word marker) {
    Precision p;
    p.bound_ = std::move(marker);
    return p;
  }

  bool is_exact() const { return !bound_.has_value(); }
  const Word& bound() const {
    if (is_exact()) throw domain_error("exact precision has no bound");
    return *bound_;
  }

  bool operator==(const Precision&) const = default;

private:
  std::optional<Word> bound_;
};

// The weaker of two windows; exact counts as infinitely wide.
inline Precision coarser(const Precision& p, const Precision& q, int degree_cap) {
  if (p.is_exact()) return q;
  if (q.is_exact()) return p;
  return magnus_less(p.bound(), q.bound(), degree_cap) ? p : q;
}

struct Term {
  Coeff coefficient;
  Word word;

  bool operator==(const Term&) const = default;
};

// Twisted series with well-ordered support, stored up to a precision window.
// Terms are kept strictly increasing in the group order, zero coefficients
// are dropped, and no stored word exceeds the window marker.
class Series {
public:
  Series(ContextPtr ctx, std::vector<Term> terms, Precision prec = Precision::exact())
      : ctx_(std::move(ctx)), prec_(std::move(prec)) {
    if (!ctx_) throw domain_error("series requires a context");
    canonicalize(std::move(terms));
  }

  static Series zero(ContextPtr ctx) { return Series(std::move(ctx), {}); }
  static Series one(ContextPtr ctx) { return scalar(std::move(ctx), Coeff(1)); }
  static Series scalar(ContextPtr ctx, Coeff a) {
    return Series(std::move(ctx), {Term{std::move(a), Word()}});
  }
  static Series of_word(ContextPtr ctx, Word g) {
    return Series(std::move(ctx), {Term{Coeff(1), std::move(g)}});
  }
  static Series single(ContextPtr ctx, Coeff a, Word g) {
    return Series(std::move(ctx), {Term{std::move(a), std::move(g)}});
  }

  const ContextPtr& context() const { return ctx_; }
  const std::vector<Term>& terms() const { return terms_; }
  const Precision& precision() const { return prec_; }

  bool has_stored_terms() const { return !terms_.empty(); }
  // Definitely zero. A termless series with a window may hide anything.
  bool is_exact_zero() const { return terms_.empty() && prec_.is_exact(); }

  // Least stored word. Sound whenever any term is stored: hidden support
  // sits strictly above the marker, and the marker dominates stored words.
  const Word& valuation() const {
    if (terms_.empty()) {
      if (prec_.is_exact()) throw zero_valuation_error();
      throw indeterminate_valuation_error();
    }
    return terms_.front().word;
  }

  const Coeff& leading_coefficient() const {
    valuation();
    return terms_.front().coefficient;
  }

  std::optional<Coeff> coefficient_at(const Word& g) const {
    for (const Term& t : terms_)
      if (t.word == g) return t.coefficient;
    return std::nullopt;
  }

  Series negated() const {
    std::vector<Term> ts = terms_;
    for (Term& t : ts) t.coefficient = t.coefficient.negated();
    return Series(ctx_, std::move(ts), prec_);
  }

  Series operator+(const Series& rhs) const {
    ContextPtr ctx = joint_context(*this, rhs);
    std::vector<Term> ts = terms_;
    ts.insert(ts.end(), rhs.terms_.begin(), rhs.terms_.end());
    return Series(ctx, std::move(ts), coarser(prec_, rhs.prec_, ctx->order_degree_cap));
  }

  Series operator-(const Series& rhs) const { return *this + rhs.negated(); }

  // (a g)(b h) = a sigma_g(b) gh, extended bilinearly. Each hidden tail of a
  // factor pushes the window of the product: tail * stored lies strictly
  // above bound * valuation, and symmetrically.
  Series operator*(const Series& rhs) const {
    ContextPtr ctx = joint_context(*this, rhs);
    if (is_exact_zero() || rhs.is_exact_zero()) return zero(ctx);
    std::vector<Term> ts;
    ts.reserve(terms_.size() * rhs.terms_.size());
    for (const Term& ta : terms_) {
      FieldAut twist = ctx->twist.of_word(ta.word);
      for (const Term& tb : rhs.terms_)
        ts.push_back(Term{ta.coefficient * tb.coefficient.applied(twist), ta.word * tb.word});
    }
    Precision p = Precision::exact();
    int cap = ctx->order_degree_cap;
    if (!prec_.is_exact() && rhs.has_stored_terms())
      p = coarser(p, Precision::above(prec_.bound() * rhs.valuation()), cap);
    if (!rhs.prec_.is_exact() && has_stored_terms())
      p = coarser(p, Precision::above(valuation() * rhs.prec_.bound()), cap);
    if (!prec_.is_exact() && !rhs.prec_.is_exact())
      p = coarser(p, Precision::above(prec_.bound() * rhs.prec_.bound()), cap);
    return Series(ctx, std::move(ts), p);
  }

  // Keeps stored terms strictly below the cutoff; everything else moves into
  // the window. The window only ever moves down.
  Series truncated(const Word& cutoff) const {
    int cap = ctx_->order_degree_cap;
    MagnusKey cut(cutoff);
    std::vector<Term> kept;
    bool dropped = false;
    for (const Term& t : terms_) {
      if (magnus_compare(MagnusKey(t.word), cut, cap) == Ord::less)
        kept.push_back(t);
      else
        dropped = true;
    }
    if (!dropped) return *this;
    Precision p;
    if (!prec_.is_exact() && magnus_less(prec_.bound(), cutoff, cap))
      p = prec_;  // old hidden tail and dropped terms both clear the old bound
    else
      p = Precision::above(kept.empty() ? Word() : kept.back().word);
    return Series(ctx_, std::move(kept), p);
  }

  Series with_window(const Precision& w) const {
    return Series(ctx_, terms_, coarser(prec_, w, ctx_->order_degree_cap));
  }

  // Geometric inversion to the requested depth. Exact single-term input
  // yields an exact inverse; otherwise the result carries a window just
  // below cutoff = v(eps)^(depth+1) * g^-1, the first position the dropped
  // geometric tail can touch.
  Series inverted(int depth) const {
    if (depth < 0) throw domain_error("negative inversion depth");
    const Word& g = valuation();
    Word ginv = g.inverse();
    Coeff lead_coeff = terms_.front().coefficient.inverse().applied(ctx_->twist.of_word(ginv));
    Series lead_inv = single(ctx_, std::move(lead_coeff), ginv);
    Series eps = lead_inv * (*this) - one(ctx_);
    if (!eps.has_stored_terms()) {
      if (eps.prec_.is_exact()) return lead_inv;
      // nothing visible to iterate on; the correction tail of (1 + hidden)^-1
      // stays strictly above the hidden bound
      return Series(ctx_, lead_inv.terms_, Precision::above(eps.prec_.bound() * ginv));
    }
    const Word ve = eps.valuation();
    Word cutoff = ve.pow(depth + 1);
    Series neg_eps = eps.negated();
    Series partial = one(ctx_);
    Series power = one(ctx_);
    for (int i = 1; i <= depth; ++i) {
      // terms pruned here only ever spawn products at or above the cutoff,
      // since every eps term is strictly positive; positions below the
      // cutoff are unaffected, so the window need not move
      power = (power * neg_eps).pruned_unchecked(cutoff);
      partial = partial + power;
    }
    Series result = (partial * lead_inv).pruned_unchecked(cutoff * ginv);
    int cap = ctx_->order_degree_cap;
    // a depth-limited inverse is never exact: the dropped geometric tail
    // starts at the cutoff even when every retained term is
    if (result.prec_.is_exact() || !magnus_less(result.prec_.bound(), cutoff * ginv, cap))
      result.prec_ = Precision::above(result.terms_.back().word);
    return result;
  }

  bool operator==(const Series& rhs) const {
    return *ctx_ == *rhs.ctx_ && terms_ == rhs.terms_ && prec_ == rhs.prec_;
  }

private:
  // Drops stored terms at or above the cutoff without touching the window.
  // Only for callers that prove the dropped terms cannot influence any
  // position the result is later trusted at; inverted() stamps a sound
  // window before anything escapes.
  Series pruned_unchecked(const Word& cutoff) const {
    int cap = ctx_->order_degree_cap;
    MagnusKey cut(cutoff);
    std::vector<Term> kept;
    for (const Term& t : terms_)
      if (magnus_compare(MagnusKey(t.word), cut, cap) == Ord::less) kept.push_back(t);
    if (kept.size() == terms_.size()) return *this;
    return Series(ctx_, std::move(kept), prec_);
  }

  static ContextPtr joint_context(const Series& x, const Series& y) {
    if (x.ctx_ == y.ctx_ || *x.ctx_ == *y.ctx_) return x.ctx_;
    throw domain_error("series from different sessions cannot be combined");
  }

  void canonicalize(std::vector<Term> raw) {
    int rank = ctx_->twist.rank();
    int cap = ctx_->order_degree_cap;
    long long d = 0;
    std::map<Word, Coeff> merged;  // shortlex keys, merge only
    for (Term& t : raw) {
      if (t.word.max_generator() > rank)
        throw domain_error("series term uses a generator beyond the session rank");
      long long td = t.coefficient.discriminant();
      if (td != 0) {
        if (d != 0 && td != d)
          throw domain_error("coefficients from distinct quadratic fields");
        d = td;
      }
      auto it = merged.find(t.word);
      if (it == merged.end())
        merged.emplace(std::move(t.word), std::move(t.coefficient));
      else
        it->second = it->second + t.coefficient;
    }
    terms_.clear();
    terms_.reserve(merged.size());
    std::vector<MagnusKey> keys;
    keys.reserve(merged.size());
    for (auto& [w, c] : merged)
      if (!c.is_zero()) {
        terms_.push_back(Term{std::move(c), w});
        keys.emplace_back(w);
      }
    std::vector<std::size_t> order(terms_.size());
    std::iota(order.begin(), order.end(), std::size_t(0));
    std::sort(order.begin(), order.end(), [&keys, cap](std::size_t a, std::size_t b) {
      return magnus_compare(keys[a], keys[b], cap) == Ord::less;
    });
    std::vector<Term> sorted;
    sorted.reserve(terms_.size());
    for (std::size_t i : order) sorted.push_back(std::move(terms_[i]));
    terms_ = std::move(sorted);
    if (!prec_.is_exact()) {
      MagnusKey bound(prec_.bound());
      std::size_t keep = terms_.size();
      while (keep > 0 &&
             magnus_compare(bound, keys[order[keep - 1]], cap) == Ord::less)
        --keep;
      terms_.resize(keep);
    }
  }

  ContextPtr ctx_;
  std::vector<Term> terms_;
  Precision prec_;
};

inline Series conjugate(const Series& by, const Series& s, int depth) {
  return by * s * by.inverted(depth);
}

// Stored terms of x and y agree at every position both windows can see.
inline bool agree_up_to_precision(const Series& x, const Series& y) {
  int cap = x.context()->order_degree_cap;
  Precision window = coarser(x.precision(), y.precision(), cap);
  Series diff = x - y;
  if (window.is_exact()) return !diff.has_stored_terms();
  for (const Term& t : diff.terms())
    if (magnus_less(window.bound(), t.word, cap)) break;
    else return false;
  return true;
}

enum class LaurentKind { yes, no, indeterminate_beyond_precision };

struct LaurentVerdict {
  LaurentKind kind;
  std::optional<Word> witness;  // stored word off the cyclic subgroup, when `no`
  Precision window;             // the window that blocks a definite yes

  bool passes() const { return kind != LaurentKind::no; }
};

// Is every stored word a power of h? Exact series give a definite answer;
// windowed series can only be refuted by a stored witness, never confirmed.
inline LaurentVerdict laurent_membership(const Series& s, const Word& h) {
  if (h.is_identity()) throw domain_error("Laurent membership needs a nontrivial h");
  for (const Term& t : s.terms())
    if (!power_exponent(t.word, h))
      return {LaurentKind::no, t.word, s.precision()};
  if (s.precision().is_exact()) return {LaurentKind::yes, std::nullopt, Precision::exact()};
  return {LaurentKind::indeterminate_beyond_precision, std::nullopt, s.precision()};
}

struct LaurentSplit {
  Series on;   // terms supported on powers of h
  Series off;  // every other stored term
};

inline LaurentSplit split_by_laurent(const Series& s, const Word& h) {
  if (h.is_identity()) throw domain_error("Laurent split needs a nontrivial h");
  std::vector<Term> on, off;
  for (const Term& t : s.terms())
    (power_exponent(t.word, h) ? on : off).push_back(t);
  return {Series(s.context(), std::move(on), s.precision()),
          Series(s.context(), std::move(off), s.precision())};
}

}  // namespace malcev
