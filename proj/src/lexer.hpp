#pragma once

// Shared tokenizer and expression parser for the text formats
// (polynomials, automata, systems, counting constraints).

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fliess/error.hpp"
#include "fliess/polynomial.hpp"

namespace fliess::detail {

enum class TokenKind { Identifier, Integer, Punct, End };

struct Token {
  TokenKind kind = TokenKind::End;
  std::string text;
  std::size_t line = 1;
  std::size_t column = 1;
};

class Lexer {
 public:
  explicit Lexer(std::string_view source);

  const Token& peek(std::size_t ahead = 0) const;
  Token next();
  bool at_end() const { return peek().kind == TokenKind::End; }

  bool is_punct(std::string_view p, std::size_t ahead = 0) const;
  bool is_identifier(std::string_view name) const;
  /// Consumes the punctuation if present.
  bool accept(std::string_view p);
  void expect(std::string_view p);
  /// Consumes the keyword (identifier) if present.
  bool accept_keyword(std::string_view name);
  void expect_keyword(std::string_view name);
  std::string expect_identifier();
  unsigned long expect_unsigned();

  [[noreturn]] void fail(const std::string& message) const;
  [[noreturn]] static void fail_at(const Token& token, const std::string& message);

 private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

/// Maps an identifier to a variable id, or throws through the lexer.
using NameResolver = std::function<Var(const Token&)>;

/// Parses a polynomial expression: sums/differences of products of
/// factors; a factor is an integer, a name, a parenthesised expression,
/// optionally raised to `^k`. Division is allowed by rational constants.
/// Stops at the first token that cannot continue the expression.
Polynomial parse_expression(Lexer& lexer, const NameResolver& resolve);

/// Parses `int`, `-int`, `int/int` at the current position.
Rational parse_rational_literal(Lexer& lexer);

}  // namespace fliess::detail
