#pragma once

#include <vector>

#include "malcev/rational.hpp"
#include "malcev/word.hpp"

namespace malcev {

// Automorphism group of the coefficient field over Q. For Q itself only the
// identity acts; for a quadratic field Q(sqrt d) conjugation flips the sign
// of the sqrt part. Both are involutions, so composition is parity.
enum class FieldAut { identity, conjugation };

inline FieldAut compose(FieldAut f, FieldAut g) {
  return f == g ? FieldAut::identity : FieldAut::conjugation;
}

inline FieldAut inverse_of(FieldAut f) { return f; }

// Exact element a + b*sqrt(d) of Q or of a fixed quadratic extension.
// Rational values are normalized to d == 0, so mixed-field arithmetic is
// detected by comparing nonzero discriminants. Mixing two distinct quadratic
// fields is an error, never a coercion.
class Coeff {
public:
  Coeff() = default;
  Coeff(int n) : a_(n) {}
  Coeff(Rat a) : a_(std::move(a)) {}
  Coeff(Rat a, Rat b, long long d) : a_(std::move(a)), b_(std::move(b)), d_(d) {
    if (b_ == 0) {
      d_ = 0;
    } else if (!is_square_free(d_)) {
      throw domain_error("quadratic discriminant must be square-free and not 0 or 1");
    }
  }

  static Coeff sqrt_of(long long d) { return Coeff(Rat(0), Rat(1), d); }

  const Rat& rational_part() const { return a_; }
  const Rat& radical_part() const { return b_; }
  long long discriminant() const { return d_; }

  bool is_zero() const { return a_ == 0 && b_ == 0; }
  bool is_one() const { return a_ == 1 && b_ == 0; }
  bool is_rational() const { return b_ == 0; }

  Coeff operator+(const Coeff& rhs) const {
    long long d = joint_discriminant(*this, rhs);
    return make(a_ + rhs.a_, b_ + rhs.b_, d);
  }

  Coeff operator-(const Coeff& rhs) const {
    long long d = joint_discriminant(*this, rhs);
    return make(a_ - rhs.a_, b_ - rhs.b_, d);
  }

  Coeff negated() const { return make(-a_, -b_, d_); }

  Coeff operator*(const Coeff& rhs) const {
    long long d = joint_discriminant(*this, rhs);
    return make(a_ * rhs.a_ + Rat(d) * b_ * rhs.b_, a_ * rhs.b_ + b_ * rhs.a_, d);
  }

  // 1/(a + b sqrt d) = (a - b sqrt d) / (a^2 - d b^2); the norm is nonzero
  // for every nonzero element because d is not a square.
  Coeff inverse() const {
    if (is_zero()) throw domain_error("coefficient division by zero");
    Rat norm = a_ * a_ - Rat(d_) * b_ * b_;
    return make(a_ / norm, -b_ / norm, d_);
  }

  Coeff applied(FieldAut f) const {
    return f == FieldAut::identity ? *this : make(a_, -b_, d_);
  }

  bool operator==(const Coeff& rhs) const {
    return a_ == rhs.a_ && b_ == rhs.b_ && d_ == rhs.d_;
  }

private:
  static long long joint_discriminant(const Coeff& x, const Coeff& y) {
    if (x.d_ == 0) return y.d_;
    if (y.d_ == 0 || y.d_ == x.d_) return x.d_;
    throw domain_error("coefficients from distinct quadratic fields");
  }

  // Skips the constructor's validation: d is already vetted and b may have
  // become zero through cancellation.
  static Coeff make(Rat a, Rat b, long long d) {
    Coeff c;
    c.a_ = std::move(a);
    c.b_ = std::move(b);
    c.d_ = c.b_ == 0 ? 0 : d;
    return c;
  }

  Rat a_;
  Rat b_;
  long long d_ = 0;
};

// One field automorphism per generator; a word acts by the composite of its
// letters' automorphisms. Involutions make the composite a parity count, and
// a letter and its inverse act identically.
struct TwistSpec {
  std::vector<FieldAut> images;

  static TwistSpec untwisted(int rank) {
    return TwistSpec{std::vector<FieldAut>(static_cast<std::size_t>(rank), FieldAut::identity)};
  }

  int rank() const { return static_cast<int>(images.size()); }

  bool is_untwisted() const {
    for (FieldAut f : images)
      if (f != FieldAut::identity) return false;
    return true;
  }

  FieldAut of_word(const Word& w) const {
    int parity = 0;
    for (Letter l : w.letters()) {
      int idx = l < 0 ? -int(l) : int(l);
      if (idx > rank()) throw domain_error("word uses a generator beyond the twist's rank");
      if (images[static_cast<std::size_t>(idx - 1)] == FieldAut::conjugation) parity ^= 1;
    }
    return parity ? FieldAut::conjugation : FieldAut::identity;
  }

  bool operator==(const TwistSpec&) const = default;
};

}  // namespace malcev
