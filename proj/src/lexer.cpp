#include "lexer.hpp"

#include <array>
#include <cctype>

namespace fliess::detail {

namespace {

constexpr std::array<std::string_view, 7> kTwoCharPuncts = {"->", "==", ">=", "<=", "!=", "&&", "||"};
constexpr std::string_view kSingleCharPuncts = "+-*/^(){}[];:,='%!<>";

}  // namespace

Lexer::Lexer(std::string_view source) {
  std::size_t line = 1;
  std::size_t column = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (source[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
      ++i;
    }
  };
  while (i < source.size()) {
    const char ch = source[i];
    if (std::isspace(static_cast<unsigned char>(ch))) {
      advance(1);
      continue;
    }
    if (ch == '#') {
      while (i < source.size() && source[i] != '\n') advance(1);
      continue;
    }
    Token token;
    token.line = line;
    token.column = column;
    if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      std::size_t j = i;
      while (j < source.size() && (std::isalnum(static_cast<unsigned char>(source[j])) || source[j] == '_')) ++j;
      token.kind = TokenKind::Identifier;
      token.text = std::string(source.substr(i, j - i));
      advance(j - i);
    } else if (std::isdigit(static_cast<unsigned char>(ch))) {
      std::size_t j = i;
      while (j < source.size() && std::isdigit(static_cast<unsigned char>(source[j]))) ++j;
      token.kind = TokenKind::Integer;
      token.text = std::string(source.substr(i, j - i));
      advance(j - i);
    } else {
      std::string_view two = source.substr(i, 2);
      bool matched = false;
      for (auto p : kTwoCharPuncts) {
        if (two == p) {
          token.kind = TokenKind::Punct;
          token.text = std::string(p);
          advance(2);
          matched = true;
          break;
        }
      }
      if (!matched) {
        if (kSingleCharPuncts.find(ch) == std::string_view::npos) {
          throw ParseError(std::string("unexpected character '") + ch + "'", line, column);
        }
        token.kind = TokenKind::Punct;
        token.text = std::string(1, ch);
        advance(1);
      }
    }
    tokens_.push_back(std::move(token));
  }
  Token end;
  end.line = line;
  end.column = column;
  tokens_.push_back(end);
}

const Token& Lexer::peek(std::size_t ahead) const {
  return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
}

Token Lexer::next() {
  Token t = peek();
  if (pos_ + 1 < tokens_.size()) ++pos_;
  return t;
}

bool Lexer::is_punct(std::string_view p, std::size_t ahead) const {
  const Token& t = peek(ahead);
  return t.kind == TokenKind::Punct && t.text == p;
}

bool Lexer::is_identifier(std::string_view name) const {
  const Token& t = peek();
  return t.kind == TokenKind::Identifier && t.text == name;
}

bool Lexer::accept(std::string_view p) {
  if (!is_punct(p)) return false;
  next();
  return true;
}

void Lexer::expect(std::string_view p) {
  if (!accept(p)) fail("expected '" + std::string(p) + "'");
}

bool Lexer::accept_keyword(std::string_view name) {
  if (!is_identifier(name)) return false;
  next();
  return true;
}

void Lexer::expect_keyword(std::string_view name) {
  if (!accept_keyword(name)) fail("expected '" + std::string(name) + "'");
}

std::string Lexer::expect_identifier() {
  if (peek().kind != TokenKind::Identifier) fail("expected a name");
  return next().text;
}

unsigned long Lexer::expect_unsigned() {
  if (peek().kind != TokenKind::Integer) fail("expected a non-negative integer");
  const Token t = next();
  try {
    return std::stoul(t.text);
  } catch (const std::exception&) {
    fail_at(t, "integer out of range");
  }
}

void Lexer::fail(const std::string& message) const { fail_at(peek(), message); }

void Lexer::fail_at(const Token& token, const std::string& message) {
  std::string found = token.kind == TokenKind::End ? "end of input" : "'" + token.text + "'";
  throw ParseError(message + ", found " + found, token.line, token.column);
}

namespace {

Polynomial parse_sum(Lexer& lexer, const NameResolver& resolve);

Polynomial parse_primary(Lexer& lexer, const NameResolver& resolve) {
  const Token& t = lexer.peek();
  if (t.kind == TokenKind::Integer) return Polynomial(Rational(Integer(lexer.next().text, 10)));
  if (t.kind == TokenKind::Identifier) {
    const Token name = lexer.next();
    return Polynomial::variable(resolve(name));
  }
  if (lexer.accept("(")) {
    Polynomial inner = parse_sum(lexer, resolve);
    lexer.expect(")");
    return inner;
  }
  lexer.fail("expected a number, a name or '('");
}

Polynomial parse_power(Lexer& lexer, const NameResolver& resolve) {
  Polynomial base = parse_primary(lexer, resolve);
  if (lexer.accept("^")) {
    const unsigned long e = lexer.expect_unsigned();
    if (e > 1000) lexer.fail("exponent too large");
    base = base.pow(static_cast<unsigned>(e));
  }
  return base;
}

Polynomial parse_product(Lexer& lexer, const NameResolver& resolve) {
  Polynomial value = parse_power(lexer, resolve);
  while (true) {
    if (lexer.accept("*")) {
      value *= parse_power(lexer, resolve);
    } else if (lexer.is_punct("/")) {
      const Token slash = lexer.next();
      Polynomial divisor = parse_power(lexer, resolve);
      if (!divisor.is_constant() || divisor.is_zero()) {
        Lexer::fail_at(slash, "division is only allowed by a nonzero constant");
      }
      value *= Rational(1) / divisor.constant_term();
    } else {
      return value;
    }
  }
}

Polynomial parse_signed(Lexer& lexer, const NameResolver& resolve) {
  if (lexer.accept("-")) return -parse_signed(lexer, resolve);
  if (lexer.accept("+")) return parse_signed(lexer, resolve);
  return parse_product(lexer, resolve);
}

Polynomial parse_sum(Lexer& lexer, const NameResolver& resolve) {
  Polynomial value = parse_signed(lexer, resolve);
  while (true) {
    if (lexer.accept("+")) {
      value += parse_product(lexer, resolve);
    } else if (lexer.accept("-")) {
      value -= parse_product(lexer, resolve);
    } else {
      return value;
    }
  }
}

}  // namespace

Polynomial parse_expression(Lexer& lexer, const NameResolver& resolve) { return parse_sum(lexer, resolve); }

Rational parse_rational_literal(Lexer& lexer) {
  const bool negative = lexer.accept("-");
  if (!negative) lexer.accept("+");
  if (lexer.peek().kind != TokenKind::Integer) lexer.fail("expected a rational number");
  Rational value(Integer(lexer.next().text, 10));
  if (lexer.accept("/")) {
    if (lexer.peek().kind != TokenKind::Integer) lexer.fail("expected a denominator");
    const Token den_token = lexer.next();
    Integer den(den_token.text, 10);
    if (den == 0) Lexer::fail_at(den_token, "zero denominator");
    value /= Rational(den);
  }
  return negative ? Rational(-value) : value;
}

}  // namespace fliess::detail
