#include "segrekit/expression.hpp"

#include <cctype>
#include <string>
#include <vector>

#include "segrekit/errors.hpp"

namespace segrekit {

namespace {

enum class Tok { number, ident, plus, minus, star, slash, caret, lparen, rparen, end };

struct Token {
  Tok kind;
  std::string text;
  std::size_t column;
};

const char* describe(Tok t) {
  switch (t) {
    case Tok::number: return "number";
    case Tok::ident: return "identifier";
    case Tok::plus: return "'+'";
    case Tok::minus: return "'-'";
    case Tok::star: return "'*'";
    case Tok::slash: return "'/'";
    case Tok::caret: return "'^'";
    case Tok::lparen: return "'('";
    case Tok::rparen: return "')'";
    case Tok::end: return "end of expression";
  }
  return "token";
}

std::vector<Token> tokenize(std::string_view text, SourcePos pos) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < text.size()) {
    char ch = text[i];
    std::size_t col = pos.column + i;
    if (std::isspace(static_cast<unsigned char>(ch))) {
      ++i;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '.') {
      std::size_t j = i;
      while (j < text.size() && (std::isdigit(static_cast<unsigned char>(text[j])) || text[j] == '.')) ++j;
      out.push_back({Tok::number, std::string(text.substr(i, j - i)), col});
      i = j;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      std::size_t j = i;
      while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_')) ++j;
      out.push_back({Tok::ident, std::string(text.substr(i, j - i)), col});
      i = j;
      continue;
    }
    Tok kind;
    switch (ch) {
      case '+': kind = Tok::plus; break;
      case '-': kind = Tok::minus; break;
      case '*': kind = Tok::star; break;
      case '/': kind = Tok::slash; break;
      case '^': kind = Tok::caret; break;
      case '(': kind = Tok::lparen; break;
      case ')': kind = Tok::rparen; break;
      default:
        throw ParseError(std::string("unexpected character '") + ch + "'", pos.line, col);
    }
    out.push_back({kind, std::string(1, ch), col});
    ++i;
  }
  out.push_back({Tok::end, "", pos.column + text.size()});
  return out;
}

GaussianRational parse_number(const Token& t, std::size_t line) {
  const std::string& s = t.text;
  auto dot = s.find('.');
  if (dot != std::string::npos && s.find('.', dot + 1) != std::string::npos) {
    throw ParseError("malformed number '" + s + "'", line, t.column);
  }
  std::string digits = s;
  std::string denom = "1";
  if (dot != std::string::npos) {
    digits = s.substr(0, dot) + s.substr(dot + 1);
    denom = "1" + std::string(s.size() - dot - 1, '0');
  }
  if (digits.empty()) throw ParseError("malformed number '" + s + "'", line, t.column);
  mpq_class q(mpz_class(digits, 10), mpz_class(denom, 10));
  q.canonicalize();
  return {q, 0};
}

class Parser {
 public:
  Parser(std::string_view text, const ExpressionEnv& env, SourcePos pos)
      : env_(env), line_(pos.line), tokens_(tokenize(text, pos)) {}

  Polynomial parse_all() {
    Polynomial p = parse_sum();
    if (peek().kind != Tok::end) fail("unexpected " + std::string(describe(peek().kind)));
    return p;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  const Token& next() { return tokens_[pos_++]; }
  bool accept(Tok k) {
    if (peek().kind != k) return false;
    ++pos_;
    return true;
  }
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line_, peek().column); }
  [[noreturn]] void fail_at(const std::string& msg, std::size_t col) const { throw ParseError(msg, line_, col); }

  Polynomial parse_sum() {
    Polynomial acc = parse_product();
    while (true) {
      if (accept(Tok::plus)) {
        acc += parse_product();
      } else if (accept(Tok::minus)) {
        acc -= parse_product();
      } else {
        return acc;
      }
    }
  }

  Polynomial parse_product() {
    Polynomial acc = parse_unary();
    while (true) {
      if (accept(Tok::star)) {
        acc *= parse_unary();
      } else if (peek().kind == Tok::slash) {
        std::size_t col = next().column;
        Polynomial d = parse_unary();
        auto c = d.constant_value();
        if (!c) fail_at("division by a non-constant expression", col);
        if (c->is_zero()) fail_at("division by zero", col);
        acc *= c->inverse();
      } else {
        return acc;
      }
    }
  }

  Polynomial parse_unary() {
    if (accept(Tok::minus)) return -parse_unary();
    if (accept(Tok::plus)) return parse_unary();
    return parse_power();
  }

  Polynomial parse_power() {
    Polynomial base = parse_atom();
    if (peek().kind != Tok::caret) return base;
    next();
    std::size_t col = peek().column;
    Polynomial e = parse_unary();
    auto c = e.constant_value();
    if (!c) fail_at("non-constant exponent", col);
    if (!c->is_real() || c->re().get_den() != 1 || sgn(c->re()) < 0) {
      fail_at("exponent must be a nonnegative integer", col);
    }
    if (c->re() >= mpq_class(std::uint64_t{1} << 31)) fail_at("exponent too large", col);
    return base.pow(static_cast<std::uint32_t>(c->re().get_num().get_ui()));
  }

  Polynomial parse_atom() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::number:
        next();
        return Polynomial::constant(env_.context, parse_number(t, line_));
      case Tok::lparen: {
        next();
        Polynomial inner = parse_sum();
        if (!accept(Tok::rparen)) fail("expected ')'");
        return inner;
      }
      case Tok::ident:
        return parse_identifier();
      default:
        fail("unexpected " + std::string(describe(t.kind)));
    }
  }

  Polynomial parse_identifier() {
    const Token& t = next();
    if (peek().kind == Tok::lparen) {
      if (t.text != "conj") fail_at("unknown function '" + t.text + "'", t.column);
      if (!env_.conj) fail_at("conj() is not allowed here", t.column);
      next();
      Polynomial arg = parse_sum();
      if (!accept(Tok::rparen)) fail("expected ')'");
      return env_.conj(arg);
    }
    if (t.text == "i") return Polynomial::constant(env_.context, GaussianRational::i());
    if (t.text == "conj") fail_at("conj must be applied to an argument", t.column);
    std::optional<Polynomial> v = env_.resolve ? env_.resolve(t.text) : std::nullopt;
    if (!v) fail_at("unknown variable '" + t.text + "'", t.column);
    return *v;
  }

  const ExpressionEnv& env_;
  std::size_t line_;
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_expression(std::string_view text, const ExpressionEnv& env, SourcePos pos) {
  return Parser(text, env, pos).parse_all();
}

GaussianRational parse_constant(std::string_view text, SourcePos pos) {
  ExpressionEnv env{VarContext(), nullptr, nullptr};
  Polynomial p = parse_expression(text, env, pos);
  return *p.constant_value();
}

bool is_identifier(std::string_view name) {
  if (name.empty()) return false;
  if (!(std::isalpha(static_cast<unsigned char>(name[0])) || name[0] == '_')) return false;
  for (char ch : name) {
    if (!(std::isalnum(static_cast<unsigned char>(ch)) || ch == '_')) return false;
  }
  return true;
}

}  // namespace segrekit
