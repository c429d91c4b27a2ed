#pragma once

// Expression language for polynomial fields. Only holomorphic constructs are
// admitted:
//
//   field   = expr { ";" expr } ;
//   expr    = term { ("+" | "-") term } ;
//   term    = unary { ("*" | "/") unary } ;          divisor must be a nonzero constant
//   unary   = ("-" | "+") unary | power ;
//   power   = primary [ "^" integer ] ;              '^' binds tighter than unary minus
//   primary = number | number "i" | "i" | variable | "(" expr ")" ;
//   variable = "z" digits ;                          1-based: z1 .. zn
//
// Decimal literals are read as exact rationals.

#include <algorithm>
#include <cctype>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "holopot/poly_field.hpp"

namespace holopot {

struct SourcePos {
  std::size_t line = 1;
  std::size_t column = 1;
};

inline std::string to_string(SourcePos p) { return std::to_string(p.line) + ":" + std::to_string(p.column); }

class ParseError : public Error {
 public:
  ParseError(SourcePos pos, const std::string& msg) : Error(to_string(pos) + ": " + msg), pos_(pos) {}
  SourcePos position() const { return pos_; }

 private:
  SourcePos pos_;
};

class SyntaxError : public ParseError {
 public:
  SyntaxError(SourcePos pos, std::vector<std::string> expected, const std::string& found)
      : ParseError(pos, "syntax error: expected " + join(expected) + " but found " + found),
        expected_(std::move(expected)) {}
  SyntaxError(SourcePos pos, const std::string& msg) : ParseError(pos, "syntax error: " + msg) {}

  const std::vector<std::string>& expected() const { return expected_; }

 private:
  static std::string join(const std::vector<std::string>& xs) {
    if (xs.size() == 1) return xs.front();
    std::string s = "one of {";
    for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? ", " : "") + xs[i];
    return s + "}";
  }
  std::vector<std::string> expected_;
};

class DimensionError : public ParseError {
 public:
  using ParseError::ParseError;
};

class NonHolomorphicToken : public ParseError {
 public:
  NonHolomorphicToken(SourcePos pos, std::string token)
      : ParseError(pos, "non-holomorphic construct '" + token + "' is not allowed"), token_(std::move(token)) {}
  const std::string& token() const { return token_; }

 private:
  std::string token_;
};

/// Parsed expression tree.
struct Expr {
  enum class Kind { constant, variable, add, sub, mul, div, neg, pow };

  Kind kind = Kind::constant;
  SourcePos pos;
  ExactComplex value;         // constant
  std::size_t variable = 0;   // 1-based
  unsigned exponent = 0;      // pow
  std::shared_ptr<const Expr> lhs, rhs;
};

using ExprPtr = std::shared_ptr<const Expr>;

struct FieldExpr {
  std::string source;
  std::vector<ExprPtr> components;
};

namespace detail {

enum class Tok { number, imag_number, imag_unit, variable, ident, plus, minus, star, slash, caret, lparen, rparen,
                 semicolon, bar, other, end };

struct Token {
  Tok kind = Tok::end;
  std::string text;
  SourcePos pos;
};

inline std::string describe(const Token& t) {
  if (t.kind == Tok::end) return "end of input";
  return "'" + t.text + "'";
}

inline bool is_non_holomorphic_name(std::string name) {
  std::transform(name.begin(), name.end(), name.begin(), [](unsigned char c) { return std::tolower(c); });
  static const std::set<std::string> names = {"conj", "conjugate", "re", "real", "im", "imag", "abs",
                                              "arg", "bar", "zbar", "norm", "mod"};
  return names.count(name) > 0;
}

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space();
      Token t;
      t.pos = pos_;
      if (i_ >= src_.size()) {
        t.kind = Tok::end;
        out.push_back(t);
        return out;
      }
      const char c = src_[i_];
      if (std::isdigit(static_cast<unsigned char>(c)) || (c == '.' && i_ + 1 < src_.size() &&
                                                            std::isdigit(static_cast<unsigned char>(src_[i_ + 1])))) {
        lex_number(t);
      } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        lex_word(t);
      } else {
        t.text = std::string(1, c);
        switch (c) {
          case '+': t.kind = Tok::plus; break;
          case '-': t.kind = Tok::minus; break;
          case '*': t.kind = Tok::star; break;
          case '/': t.kind = Tok::slash; break;
          case '^': t.kind = Tok::caret; break;
          case '(': t.kind = Tok::lparen; break;
          case ')': t.kind = Tok::rparen; break;
          case ';': t.kind = Tok::semicolon; break;
          case '|': t.kind = Tok::bar; break;
          default: t.kind = Tok::other; break;
        }
        advance();
      }
      out.push_back(std::move(t));
    }
  }

 private:
  void advance() {
    if (src_[i_] == '\n') {
      ++pos_.line;
      pos_.column = 1;
    } else {
      ++pos_.column;
    }
    ++i_;
  }

  void skip_space() {
    while (i_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[i_]))) advance();
  }

  bool peek_is(std::size_t off, auto pred) const {
    return i_ + off < src_.size() && pred(static_cast<unsigned char>(src_[i_ + off]));
  }

  void lex_number(Token& t) {
    auto digit = [](unsigned char ch) { return std::isdigit(ch) != 0; };
    while (peek_is(0, digit)) t.text += take();
    if (i_ < src_.size() && src_[i_] == '.') {
      t.text += take();
      while (peek_is(0, digit)) t.text += take();
    }
    // Exponent part only when followed by digits ("1e-3", "2E5").
    if (i_ < src_.size() && (src_[i_] == 'e' || src_[i_] == 'E')) {
      const bool sign = i_ + 1 < src_.size() && (src_[i_ + 1] == '+' || src_[i_ + 1] == '-');
      if (peek_is(sign ? 2 : 1, digit)) {
        t.text += take();
        if (sign) t.text += take();
        while (peek_is(0, digit)) t.text += take();
      }
    }
    t.kind = Tok::number;
    auto word = [](unsigned char ch) { return std::isalnum(ch) != 0 || ch == '_'; };
    if (i_ < src_.size() && src_[i_] == 'i' && !peek_is(1, word)) {
      advance();
      t.kind = Tok::imag_number;
    }
  }

  void lex_word(Token& t) {
    while (i_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[i_])) || src_[i_] == '_')) {
      t.text += take();
    }
    if (t.text == "i") {
      t.kind = Tok::imag_unit;
    } else if (t.text.size() > 1 && t.text[0] == 'z' &&
               std::all_of(t.text.begin() + 1, t.text.end(), [](unsigned char ch) { return std::isdigit(ch); })) {
      t.kind = Tok::variable;
    } else {
      t.kind = Tok::ident;
    }
  }

  char take() {
    const char c = src_[i_];
    advance();
    return c;
  }

  std::string_view src_;
  std::size_t i_ = 0;
  SourcePos pos_;
};

inline constexpr unsigned kMaxExponent = 256;

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  std::vector<ExprPtr> parse_components() {
    std::vector<ExprPtr> out;
    out.push_back(parse_expr());
    while (cur().kind == Tok::semicolon) {
      next();
      out.push_back(parse_expr());
    }
    if (cur().kind != Tok::end) fail({"'+'", "'-'", "'*'", "'/'", "'^'", "';'", "end of input"});
    return out;
  }

 private:
  const Token& cur() const { return toks_[i_]; }
  void next() {
    if (i_ + 1 < toks_.size()) ++i_;
  }

  [[noreturn]] void fail(std::vector<std::string> expected) const {
    const Token& t = cur();
    if (t.kind == Tok::bar) throw NonHolomorphicToken(t.pos, "|");
    if (t.kind == Tok::ident && is_non_holomorphic_name(t.text)) throw NonHolomorphicToken(t.pos, t.text);
    throw SyntaxError(t.pos, std::move(expected), describe(t));
  }

  static ExprPtr node(Expr e) { return std::make_shared<const Expr>(std::move(e)); }

  ExprPtr binary(Expr::Kind kind, SourcePos pos, ExprPtr a, ExprPtr b) {
    Expr e;
    e.kind = kind;
    e.pos = pos;
    e.lhs = std::move(a);
    e.rhs = std::move(b);
    return node(std::move(e));
  }

  ExprPtr parse_expr() {
    ExprPtr lhs = parse_term();
    while (cur().kind == Tok::plus || cur().kind == Tok::minus) {
      const Token op = cur();
      next();
      lhs = binary(op.kind == Tok::plus ? Expr::Kind::add : Expr::Kind::sub, op.pos, lhs, parse_term());
    }
    return lhs;
  }

  ExprPtr parse_term() {
    ExprPtr lhs = parse_unary();
    while (cur().kind == Tok::star || cur().kind == Tok::slash) {
      const Token op = cur();
      next();
      lhs = binary(op.kind == Tok::star ? Expr::Kind::mul : Expr::Kind::div, op.pos, lhs, parse_unary());
    }
    return lhs;
  }

  ExprPtr parse_unary() {
    if (cur().kind == Tok::minus || cur().kind == Tok::plus) {
      const Token op = cur();
      next();
      ExprPtr operand = parse_unary();
      if (op.kind == Tok::plus) return operand;
      Expr e;
      e.kind = Expr::Kind::neg;
      e.pos = op.pos;
      e.lhs = std::move(operand);
      return node(std::move(e));
    }
    return parse_power();
  }

  ExprPtr parse_power() {
    ExprPtr base = parse_primary();
    if (cur().kind != Tok::caret) return base;
    const Token op = cur();
    next();
    const Token& t = cur();
    if (t.kind != Tok::number ||
        !std::all_of(t.text.begin(), t.text.end(), [](unsigned char ch) { return std::isdigit(ch); })) {
      fail({"non-negative integer exponent"});
    }
    if (t.text.size() > 4 || std::stoul(t.text) > kMaxExponent) {
      throw SyntaxError(t.pos, "exponent exceeds " + std::to_string(kMaxExponent));
    }
    Expr e;
    e.kind = Expr::Kind::pow;
    e.pos = op.pos;
    e.exponent = static_cast<unsigned>(std::stoul(t.text));
    e.lhs = std::move(base);
    next();
    return node(std::move(e));
  }

  ExprPtr parse_primary() {
    const Token t = cur();
    Expr e;
    e.pos = t.pos;
    switch (t.kind) {
      case Tok::number:
      case Tok::imag_number: {
        mpq_class q;
        if (!parse_decimal(t.text, q)) throw SyntaxError(t.pos, "malformed number '" + t.text + "'");
        e.kind = Expr::Kind::constant;
        e.value = t.kind == Tok::number ? ExactComplex(q, 0) : ExactComplex(0, q);
        next();
        return node(std::move(e));
      }
      case Tok::imag_unit:
        e.kind = Expr::Kind::constant;
        e.value = ExactComplex::imaginary_unit();
        next();
        return node(std::move(e));
      case Tok::variable: {
        const std::string digits = t.text.substr(1);
        if (digits.size() > 6) throw DimensionError(t.pos, "variable index in '" + t.text + "' is too large");
        e.kind = Expr::Kind::variable;
        e.variable = std::stoul(digits);
        if (e.variable == 0) throw DimensionError(t.pos, "variables are numbered from z1");
        next();
        return node(std::move(e));
      }
      case Tok::lparen: {
        next();
        ExprPtr inner = parse_expr();
        if (cur().kind != Tok::rparen) fail({"')'", "'+'", "'-'", "'*'", "'/'", "'^'"});
        next();
        return inner;
      }
      default:
        fail({"number", "'i'", "variable z1..zn", "'('", "'-'"});
    }
  }

  std::vector<Token> toks_;
  std::size_t i_ = 0;
};

inline ExactPoly lower(const Expr& e, std::size_t n) {
  switch (e.kind) {
    case Expr::Kind::constant: return ExactPoly::constant(n, e.value);
    case Expr::Kind::variable:
      if (e.variable > n) {
        throw DimensionError(e.pos, "variable z" + std::to_string(e.variable) + " exceeds dimension " +
                                        std::to_string(n));
      }
      return ExactPoly::variable(n, e.variable - 1);
    case Expr::Kind::add: return lower(*e.lhs, n) + lower(*e.rhs, n);
    case Expr::Kind::sub: return lower(*e.lhs, n) - lower(*e.rhs, n);
    case Expr::Kind::mul: return lower(*e.lhs, n) * lower(*e.rhs, n);
    case Expr::Kind::neg: return -lower(*e.lhs, n);
    case Expr::Kind::div: {
      const ExactPoly num = lower(*e.lhs, n);
      const ExactPoly den = lower(*e.rhs, n);
      if (den.is_zero()) throw SyntaxError(e.pos, "division by zero");
      if (den.degree() != 0) throw SyntaxError(e.pos, "division is only allowed by a nonzero constant");
      const ExactComplex d = den.coefficient(MultiIndex(n));
      ExactPoly out(n);
      for (const auto& [idx, c] : num.terms()) out.add_term(idx, c / d);
      return out;
    }
    case Expr::Kind::pow: {
      const ExactPoly base = lower(*e.lhs, n);
      ExactPoly out = ExactPoly::constant(n, ExactComplex(1));
      for (unsigned k = 0; k < e.exponent; ++k) out *= base;
      return out;
    }
  }
  return ExactPoly(n);
}

inline std::size_t max_variable(const Expr& e) {
  std::size_t m = e.kind == Expr::Kind::variable ? e.variable : 0;
  if (e.lhs) m = std::max(m, max_variable(*e.lhs));
  if (e.rhs) m = std::max(m, max_variable(*e.rhs));
  return m;
}

}  // namespace detail

/// Parses ';'-separated component expressions without lowering them.
inline FieldExpr parse_field_expr(std::string_view text) {
  FieldExpr out;
  out.source = std::string(text);
  out.components = detail::Parser(detail::Lexer(text).run()).parse_components();
  return out;
}

/// Largest variable index mentioned anywhere (0 if none).
inline std::size_t max_variable_index(const FieldExpr& f) {
  std::size_t m = 0;
  for (const auto& c : f.components) m = std::max(m, detail::max_variable(*c));
  return m;
}

inline ExactPoly lower_scalar(const FieldExpr& f, std::size_t n) {
  if (f.components.size() != 1) {
    throw DimensionError(SourcePos{}, "expected a single expression, got " + std::to_string(f.components.size()));
  }
  return detail::lower(*f.components.front(), n);
}

inline ExactField lower_field(const FieldExpr& f, std::size_t n) {
  if (f.components.size() != n) {
    throw DimensionError(SourcePos{}, "field in C^" + std::to_string(n) + " needs " + std::to_string(n) +
                                          " components, got " + std::to_string(f.components.size()));
  }
  std::vector<ExactPoly> comps;
  for (const auto& c : f.components) comps.push_back(detail::lower(*c, n));
  return ExactField(std::move(comps));
}

/// Field with n components separated by ';', using variables z1..zn.
inline ExactField parse_field(std::string_view text, std::size_t n) { return lower_field(parse_field_expr(text), n); }

/// Field whose dimension is its number of components.
inline ExactField parse_field(std::string_view text) {
  const FieldExpr f = parse_field_expr(text);
  return lower_field(f, f.components.size());
}

inline ExactPoly parse_poly(std::string_view text, std::size_t n) { return lower_scalar(parse_field_expr(text), n); }

// ---------------------------------------------------------------------------
// Pretty printing. Output parses back to the identical polynomial.

namespace detail {

inline std::string monomial_text(const MultiIndex& idx) {
  std::string s;
  for (std::size_t k = 0; k < idx.size(); ++k) {
    if (idx[k] == 0) continue;
    if (!s.empty()) s += "*";
    s += "z" + std::to_string(k + 1);
    if (idx[k] > 1) s += "^" + std::to_string(idx[k]);
  }
  return s;
}

inline std::string coefficient_text(const ExactComplex& c) {
  if (c.is_real()) return to_string(c.re);
  std::string im;
  if (c.im == 1) {
    im = "i";
  } else if (c.im == -1) {
    im = "-i";
  } else {
    im = to_string(c.im) + "*i";
  }
  if (sgn(c.re) == 0) return im;
  return "(" + to_string(c.re) + (sgn(c.im) > 0 ? "+" : "") + im + ")";
}

inline std::string term_text(const MultiIndex& idx, const ExactComplex& c) {
  const std::string mono = monomial_text(idx);
  if (mono.empty()) return coefficient_text(c);
  if (c == ExactComplex(1)) return mono;
  if (c == ExactComplex(-1)) return "-" + mono;
  return coefficient_text(c) + "*" + mono;
}

}  // namespace detail

template <Coefficient C>
std::string to_expression(const Poly<C>& p) {
  const ExactPoly q = to_exact(p);
  if (q.is_zero()) return "0";
  std::string s;
  for (const auto& [idx, c] : q.terms()) {
    const std::string t = detail::term_text(idx, c);
    if (s.empty()) {
      s = t;
    } else if (t.front() == '-') {
      s += " - " + t.substr(1);
    } else {
      s += " + " + t;
    }
  }
  return s;
}

template <Coefficient C>
std::string to_expression(const PolyField<C>& F) {
  std::string s;
  for (std::size_t j = 0; j < F.dimension(); ++j) s += (j ? "; " : "") + to_expression(F[j]);
  return s;
}

}  // namespace holopot
