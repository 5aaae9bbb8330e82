#include <algorithm>

#include "fliess/polynomial.hpp"
#include "lexer.hpp"

namespace fliess {

namespace {

Polynomial parse_whole(std::string_view text, const detail::NameResolver& resolve) {
  detail::Lexer lexer(text);
  Polynomial p = detail::parse_expression(lexer, resolve);
  if (!lexer.at_end()) lexer.fail("unexpected trailing input");
  return p;
}

}  // namespace

Polynomial parse_polynomial(std::string_view text, std::span<const std::string> names) {
  return parse_whole(text, [&](const detail::Token& t) -> Var {
    auto it = std::find(names.begin(), names.end(), t.text);
    if (it == names.end()) detail::Lexer::fail_at(t, "unknown indeterminate");
    return static_cast<Var>(it - names.begin());
  });
}

Polynomial parse_polynomial_extending(std::string_view text, std::vector<std::string>& names) {
  return parse_whole(text, [&](const detail::Token& t) -> Var {
    auto it = std::find(names.begin(), names.end(), t.text);
    if (it != names.end()) return static_cast<Var>(it - names.begin());
    names.push_back(t.text);
    return static_cast<Var>(names.size() - 1);
  });
}

}  // namespace fliess
