#pragma once

#include <cctype>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "malcev/cyclic.hpp"
#include "malcev/series.hpp"

namespace malcev {

// Expression grammar for series:
//
//   sum     := ['-'] term (('+'|'-') term)* ['+' window] | window
//   window  := 'O' '(' '>' word ')'
//   term    := postfix (['*'] postfix)*        juxtaposition multiplies
//   postfix := primary ['^' ['-'] digits]
//   primary := digits ['/' digits] | 'r' | genrun | '(' sum ')'
//            | 'conj' '(' sum ';' sum ')'
//
// A caret after a generator run binds to the run's last generator, so xY^2
// is x * y^-2 and round-trips with the printer. Generators are x, y, z with
// uppercase inverses; x7 and X7 address higher ranks. 'r' is the square root
// generating the session's quadratic coefficient field.

constexpr long long kExponentCap = 4096;

enum class TokKind {
  number,
  gen,
  radical,
  kw_conj,
  kw_window,
  plus,
  minus,
  star,
  caret,
  slash,
  lparen,
  rparen,
  semicolon,
  greater,
  end,
};

struct Token {
  TokKind kind = TokKind::end;
  Int value = 0;        // number
  int gen_index = 0;    // gen
  bool gen_inverse = false;
  std::size_t offset = 0;
};

namespace detail {

inline std::vector<Token> lex_expr(const std::string& src) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto push = [&](TokKind k, std::size_t at) { out.push_back(Token{k, 0, 0, false, at}); };
  while (i < src.size()) {
    char c = src[i];
    std::size_t at = i;
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      out.push_back(Token{TokKind::number, Int(src.substr(i, j - i)), 0, false, at});
      i = j;
      continue;
    }
    switch (c) {
      case '+': push(TokKind::plus, at); ++i; continue;
      case '-': push(TokKind::minus, at); ++i; continue;
      case '*': push(TokKind::star, at); ++i; continue;
      case '^': push(TokKind::caret, at); ++i; continue;
      case '/': push(TokKind::slash, at); ++i; continue;
      case '(': push(TokKind::lparen, at); ++i; continue;
      case ')': push(TokKind::rparen, at); ++i; continue;
      case ';': push(TokKind::semicolon, at); ++i; continue;
      case '>': push(TokKind::greater, at); ++i; continue;
      case 'r': push(TokKind::radical, at); ++i; continue;
      case 'O': push(TokKind::kw_window, at); ++i; continue;
      default: break;
    }
    if (c == 'c') {
      if (src.compare(i, 4, "conj") == 0) {
        push(TokKind::kw_conj, at);
        i += 4;
        continue;
      }
      throw parse_error("unexpected character 'c'", at, {"conj"});
    }
    bool inverse = c == 'X' || c == 'Y' || c == 'Z';
    int index = 0;
    if (c == 'x' || c == 'X') index = 1;
    if (c == 'y' || c == 'Y') index = 2;
    if (c == 'z' || c == 'Z') index = 3;
    if (index == 0)
      throw parse_error(std::string("unexpected character '") + c + "'", at,
                        {"generator", "number", "operator"});
    ++i;
    if ((c == 'x' || c == 'X') && i < src.size() &&
        std::isdigit(static_cast<unsigned char>(src[i]))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      Int idx(src.substr(i, j - i));
      if (idx < 1 || idx > kMaxGenerators)
        throw parse_error("generator index out of range", i, {});
      index = static_cast<int>(idx);
      i = j;
    }
    out.push_back(Token{TokKind::gen, 0, index, inverse, at});
  }
  out.push_back(Token{TokKind::end, 0, 0, false, src.size()});
  return out;
}

}  // namespace detail

struct Expr {
  enum class Kind { rational, radical, word, sum, product, negate, inverse, power, conjugation };
  Kind kind = Kind::word;
  Rat value;                   // rational
  Word word;                   // word
  std::vector<Expr> children;  // sum, product, negate, inverse, power, conjugation
  long long exponent = 0;      // power
  std::optional<Word> window;  // sum
};

namespace detail {

class ExprParser {
public:
  explicit ExprParser(const std::string& src) : toks_(lex_expr(src)) {}

  Expr parse_expr() {
    Expr e = parse_sum();
    expect(TokKind::end, "end of input");
    return e;
  }

  Word parse_word_only() {
    Word w = parse_word();
    expect(TokKind::end, "end of input");
    return w;
  }

private:
  const Token& cur() const { return toks_[pos_]; }
  const Token& peek(std::size_t k) const {
    return toks_[std::min(pos_ + k, toks_.size() - 1)];
  }
  void advance() { ++pos_; }

  void expect(TokKind k, const std::string& what) {
    if (cur().kind != k) throw parse_error("expected " + what, cur().offset, {what});
    advance();
  }

  [[noreturn]] void fail(const std::string& msg) {
    throw parse_error(msg, cur().offset, {});
  }

  bool starts_factor(TokKind k) const {
    return k == TokKind::number || k == TokKind::radical || k == TokKind::gen ||
           k == TokKind::lparen || k == TokKind::kw_conj;
  }

  long long parse_exponent() {
    bool neg = false;
    if (cur().kind == TokKind::minus) {
      neg = true;
      advance();
    }
    if (cur().kind != TokKind::number) fail("expected an exponent");
    Int v = cur().value;
    advance();
    if (v > kExponentCap)
      throw resource_cap_error("exponent exceeds the supported bound of " +
                               std::to_string(kExponentCap));
    long long e = static_cast<long long>(v);
    return neg ? -e : e;
  }

  // sequence of powered generators, evaluated directly to a word
  Word parse_word() {
    if (cur().kind != TokKind::gen) fail("expected a word");
    Word w;
    while (cur().kind == TokKind::gen) {
      Word g = Word::generator(cur().gen_index, cur().gen_inverse ? -1 : +1);
      advance();
      if (cur().kind == TokKind::caret) {
        advance();
        w = w * g.pow(parse_exponent());
      } else {
        w = w * g;
      }
      if (cur().kind == TokKind::star) {
        advance();
        if (cur().kind != TokKind::gen) fail("expected a generator after '*'");
      }
    }
    return w;
  }

  Expr parse_window() {
    expect(TokKind::kw_window, "O");
    expect(TokKind::lparen, "(");
    expect(TokKind::greater, ">");
    Word w = parse_word();
    expect(TokKind::rparen, ")");
    Expr e;
    e.kind = Expr::Kind::sum;
    e.window = std::move(w);
    return e;
  }

  Expr parse_sum() {
    if (cur().kind == TokKind::kw_window) return parse_window();
    Expr e;
    e.kind = Expr::Kind::sum;
    bool negate_first = false;
    if (cur().kind == TokKind::minus) {
      negate_first = true;
      advance();
    }
    e.children.push_back(wrap_negate(parse_term(), negate_first));
    while (cur().kind == TokKind::plus || cur().kind == TokKind::minus) {
      bool minus = cur().kind == TokKind::minus;
      advance();
      if (!minus && cur().kind == TokKind::kw_window) {
        expect(TokKind::kw_window, "O");
        expect(TokKind::lparen, "(");
        expect(TokKind::greater, ">");
        e.window = parse_word();
        expect(TokKind::rparen, ")");
        break;  // the window closes the sum
      }
      e.children.push_back(wrap_negate(parse_term(), minus));
    }
    if (e.children.size() == 1 && !e.window) return std::move(e.children.front());
    return e;
  }

  static Expr wrap_negate(Expr inner, bool negate) {
    if (!negate) return inner;
    Expr e;
    e.kind = Expr::Kind::negate;
    e.children.push_back(std::move(inner));
    return e;
  }

  Expr parse_term() {
    Expr e;
    e.kind = Expr::Kind::product;
    e.children.push_back(parse_postfix());
    while (true) {
      if (cur().kind == TokKind::star) {
        advance();
        e.children.push_back(parse_postfix());
      } else if (starts_factor(cur().kind)) {
        e.children.push_back(parse_postfix());
      } else {
        break;
      }
    }
    if (e.children.size() == 1) return std::move(e.children.front());
    return e;
  }

  Expr parse_postfix() {
    // a generator run manages its own carets
    if (cur().kind == TokKind::gen) return parse_gen_factor();
    Expr base = parse_primary();
    if (cur().kind == TokKind::caret) {
      advance();
      long long ex = parse_exponent();
      Expr e;
      if (ex == -1) {
        e.kind = Expr::Kind::inverse;
      } else {
        e.kind = Expr::Kind::power;
        e.exponent = ex;
      }
      e.children.push_back(std::move(base));
      return e;
    }
    return base;
  }

  // longest generator run that leaves a caret bound to a single generator
  Expr parse_gen_factor() {
    Expr e;
    e.kind = Expr::Kind::word;
    Word w;
    bool any = false;
    while (cur().kind == TokKind::gen) {
      if (peek(1).kind == TokKind::caret) {
        if (any) break;  // the powered generator starts the next factor
        Word g = Word::generator(cur().gen_index, cur().gen_inverse ? -1 : +1);
        advance();
        advance();
        e.word = g.pow(parse_exponent());
        return e;
      }
      w = w * Word::generator(cur().gen_index, cur().gen_inverse ? -1 : +1);
      any = true;
      advance();
    }
    e.word = std::move(w);
    return e;
  }

  Expr parse_primary() {
    Expr e;
    switch (cur().kind) {
      case TokKind::number: {
        Int num = cur().value;
        advance();
        Int den = 1;
        if (cur().kind == TokKind::slash) {
          advance();
          if (cur().kind != TokKind::number) fail("expected a denominator");
          den = cur().value;
          if (den == 0) fail("zero denominator");
          advance();
        }
        e.kind = Expr::Kind::rational;
        e.value = Rat(num, den);
        return e;
      }
      case TokKind::radical:
        advance();
        e.kind = Expr::Kind::radical;
        return e;
      case TokKind::lparen: {
        advance();
        e = parse_sum();
        expect(TokKind::rparen, ")");
        return e;
      }
      case TokKind::kw_conj: {
        advance();
        expect(TokKind::lparen, "(");
        Expr by = parse_sum();
        expect(TokKind::semicolon, ";");
        Expr arg = parse_sum();
        expect(TokKind::rparen, ")");
        e.kind = Expr::Kind::conjugation;
        e.children.push_back(std::move(by));
        e.children.push_back(std::move(arg));
        return e;
      }
      default:
        fail("expected a value");
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline Expr parse_expr(const std::string& src) {
  return detail::ExprParser(src).parse_expr();
}

inline Word parse_word(const std::string& src) {
  if (src == "1") return Word();
  return detail::ExprParser(src).parse_word_only();
}

// field_d == 0 means the session works over the plain rationals
inline Series eval_expr(const Expr& e, const ContextPtr& ctx, int invert_depth,
                        long long field_d) {
  switch (e.kind) {
    case Expr::Kind::rational:
      return Series::scalar(ctx, Coeff(e.value));
    case Expr::Kind::radical:
      if (field_d == 0)
        throw domain_error("'r' needs a quadratic coefficient field; configure one first");
      return Series::scalar(ctx, Coeff::sqrt_of(field_d));
    case Expr::Kind::word:
      return Series::of_word(ctx, e.word);
    case Expr::Kind::sum: {
      Series acc = Series::zero(ctx);
      for (const Expr& c : e.children) acc = acc + eval_expr(c, ctx, invert_depth, field_d);
      if (e.window) acc = acc.with_window(Precision::above(*e.window));
      return acc;
    }
    case Expr::Kind::product: {
      Series acc = Series::one(ctx);
      for (const Expr& c : e.children) acc = acc * eval_expr(c, ctx, invert_depth, field_d);
      return acc;
    }
    case Expr::Kind::negate:
      return eval_expr(e.children.front(), ctx, invert_depth, field_d).negated();
    case Expr::Kind::inverse:
      return eval_expr(e.children.front(), ctx, invert_depth, field_d).inverted(invert_depth);
    case Expr::Kind::power: {
      Series base = eval_expr(e.children.front(), ctx, invert_depth, field_d);
      long long ex = e.exponent;
      if (ex < 0) {
        base = base.inverted(invert_depth);
        ex = -ex;
      }
      Series acc = Series::one(ctx);
      for (long long i = 0; i < ex; ++i) acc = acc * base;
      return acc;
    }
    case Expr::Kind::conjugation: {
      Series by = eval_expr(e.children.front(), ctx, invert_depth, field_d);
      Series arg = eval_expr(e.children.back(), ctx, invert_depth, field_d);
      return conjugate(by, arg, invert_depth);
    }
  }
  throw domain_error("unhandled expression node");
}

inline Series eval_series(const std::string& src, const ContextPtr& ctx, int invert_depth,
                          long long field_d) {
  return eval_expr(parse_expr(src), ctx, invert_depth, field_d);
}

// Minimal grammar over v and u for algebra elements: sums of juxtaposed
// factors with rational coefficients, caret powers, and parentheses.
inline AlgebraElement parse_algebra_element(const std::string& src, const AlgebraPtr& alg) {
  struct P {
    const std::string& s;
    const AlgebraPtr& alg;
    std::size_t i = 0;

    void skip() {
      while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    char cur() {
      skip();
      return i < s.size() ? s[i] : '\0';
    }
    [[noreturn]] void fail(const std::string& msg) { throw parse_error(msg, i, {}); }

    Int number() {
      skip();
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      if (j == i) fail("expected digits");
      Int v(s.substr(i, j - i));
      i = j;
      return v;
    }

    AlgebraElement sum() {
      bool neg = cur() == '-';
      if (neg) ++i;
      AlgebraElement acc = term();
      if (neg) acc = acc.scaled(Rat(-1));
      while (cur() == '+' || cur() == '-') {
        bool minus = cur() == '-';
        ++i;
        AlgebraElement t = term();
        acc = minus ? acc - t : acc + t;
      }
      return acc;
    }

    AlgebraElement term() {
      AlgebraElement acc = postfix();
      while (true) {
        char c = cur();
        if (c == '*') {
          ++i;
          acc = acc * postfix();
        } else if (c == 'v' || c == 'u' || c == '(' ||
                   std::isdigit(static_cast<unsigned char>(c))) {
          acc = acc * postfix();
        } else {
          break;
        }
      }
      return acc;
    }

    AlgebraElement postfix() {
      AlgebraElement base = primary();
      if (cur() == '^') {
        ++i;
        bool neg = cur() == '-';
        if (neg) ++i;
        Int e = number();
        if (e > kExponentCap) throw resource_cap_error("exponent exceeds the supported bound");
        long long ev = static_cast<long long>(e);
        return base.pow(neg ? -ev : ev);
      }
      return base;
    }

    AlgebraElement primary() {
      char c = cur();
      if (c == 'v') {
        ++i;
        return alg->gen_v();
      }
      if (c == 'u') {
        ++i;
        return alg->gen_u();
      }
      if (c == '(') {
        ++i;
        AlgebraElement e = sum();
        if (cur() != ')') fail("expected ')'");
        ++i;
        return e;
      }
      if (std::isdigit(static_cast<unsigned char>(c))) {
        Int num = number();
        Int den = 1;
        if (cur() == '/') {
          ++i;
          den = number();
          if (den == 0) fail("zero denominator");
        }
        return alg->scalar(Rat(num, den));
      }
      fail("expected v, u, a rational, or '('");
    }
  };
  P p{src, alg};
  AlgebraElement e = p.sum();
  p.skip();
  if (p.i != src.size()) throw parse_error("trailing input", p.i, {});
  return e;
}

}  // namespace malcev
