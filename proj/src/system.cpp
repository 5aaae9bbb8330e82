#include "fliess/system.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>

#include "fliess/error.hpp"
#include "fliess/oracle.hpp"
#include "lexer.hpp"

namespace fliess {

void PolynomialSystem::validate() const {
  const std::size_t k = states.size();
  if (initial_state.size() != k) throw ValidationError("initial state has the wrong dimension");
  if (dynamics.size() != inputs + 1) throw ValidationError("expected one dynamics vector per input plus the drift");
  for (const auto& p : dynamics) {
    if (p.size() != k) throw ValidationError("dynamics vector has the wrong dimension");
    for (const Polynomial& c : p) {
      if (auto v = c.max_variable(); v && *v >= k) throw ValidationError("dynamics mention an unknown state");
    }
  }
  if (auto v = output.max_variable(); v && *v >= k) throw ValidationError("output mentions an unknown state");
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (states[i] == states[j]) throw ValidationError("duplicate state " + states[i]);
    }
  }
}

namespace {

// u<j> with j >= 0, else nullopt.
std::optional<std::uint32_t> input_index(const std::string& name) {
  if (name.size() < 2 || name[0] != 'u') return std::nullopt;
  if (!std::all_of(name.begin() + 1, name.end(), [](char c) { return c >= '0' && c <= '9'; })) return std::nullopt;
  if (name.size() > 7) return std::nullopt;
  return static_cast<std::uint32_t>(std::stoul(name.substr(1)));
}

// Splits a right-hand side over states (0..k-1) and inputs (k + j - 1)
// into p_0..p_m, rejecting terms that are not affine in the inputs.
std::vector<Polynomial> split_inputs(const Polynomial& rhs, std::size_t k, std::size_t m,
                                     const std::vector<std::string>& names, const std::string& where) {
  std::vector<Polynomial> parts(m + 1);
  for (const auto& [mono, c] : rhs.terms()) {
    std::optional<Var> input;
    bool affine = true;
    for (const auto& [v, e] : mono.factors()) {
      if (v < k) continue;
      if (input || e > 1) affine = false;
      input = v;
    }
    if (!affine) {
      throw ValidationError("non-affine input term '" + Polynomial::term(c, mono).to_string(names) + "' in " + where);
    }
    if (!input) {
      parts[0].add_term(mono, c);
    } else {
      parts[*input - k + 1].add_term(mono.without_one(*input), c);
    }
  }
  return parts;
}

[[noreturn]] void reject(const detail::Token& at, const std::string& message) {
  throw ParseError(message, at.line, at.column);
}

// Rejects right-hand side terms that are not affine in the u-variables,
// reporting the offending monomial at the equation.
void check_affine(const Polynomial& rhs, const std::vector<std::string>& names, const detail::Token& at) {
  for (const auto& [mono, c] : rhs.terms()) {
    unsigned degree = 0;
    for (const auto& [v, e] : mono.factors()) {
      if (input_index(names[v])) degree += e;
    }
    if (degree > 1) {
      reject(at, "non-affine input term '" + Polynomial::term(c, mono).to_string(names) + "' in " +
                                     at.text + "'");
    }
  }
}

struct Equation {
  std::string state;
  Polynomial rhs;  // over the parse-time names
  detail::Token at;
};

PolynomialSystem assemble(std::size_t m, std::vector<std::string> states, std::vector<Rational> x0,
                          const std::vector<Equation>& equations, const Polynomial& output_over_names,
                          const std::vector<std::string>& names, const detail::Token& output_at) {
  const std::size_t k = states.size();
  // map parse-time variable ids to states (0..k-1) and inputs (k + j - 1)
  std::vector<Var> remap(names.size());
  for (std::size_t v = 0; v < names.size(); ++v) {
    auto it = std::find(states.begin(), states.end(), names[v]);
    if (it != states.end()) {
      remap[v] = static_cast<Var>(it - states.begin());
    } else if (auto j = input_index(names[v]); j && *j >= 1 && *j <= m) {
      remap[v] = static_cast<Var>(k + *j - 1);
    } else {
      remap[v] = static_cast<Var>(-1);
    }
  }
  std::vector<std::string> display = states;
  for (std::size_t j = 1; j <= m; ++j) display.push_back("u" + std::to_string(j));

  auto convert = [&](const Polynomial& p, const detail::Token& at) {
    for (Var v : p.variables()) {
      if (remap[v] == static_cast<Var>(-1)) {
        const auto j = input_index(names[v]);
        if (j && *j == 0) reject(at, "u0 is the constant 1 and cannot be used");
        if (j) reject(at, "input " + names[v] + " exceeds the declared input count");
        reject(at, "unknown state '" + names[v] + "'");
      }
    }
    return p.renamed([&](Var v) { return remap[v]; });
  };

  PolynomialSystem s;
  s.inputs = m;
  s.states = std::move(states);
  s.initial_state = std::move(x0);
  s.dynamics.assign(m + 1, std::vector<Polynomial>(k));
  std::vector<bool> seen(k, false);
  for (const Equation& eq : equations) {
    const auto idx = static_cast<std::size_t>(std::find(s.states.begin(), s.states.end(), eq.state) - s.states.begin());
    if (seen[idx]) reject(eq.at, "duplicate equation for " + eq.state);
    seen[idx] = true;
    std::vector<Polynomial> parts = split_inputs(convert(eq.rhs, eq.at), k, m, display, eq.state + "'");
    for (std::size_t j = 0; j <= m; ++j) s.dynamics[j][idx] = std::move(parts[j]);
  }
  s.output = convert(output_over_names, output_at);
  if (auto v = s.output.max_variable(); v && *v >= k) {
    reject(output_at, "output may not depend on inputs");
  }
  s.validate();
  return s;
}

PolynomialSystem parse_block(detail::Lexer& lexer) {
  lexer.expect_keyword("system");
  lexer.expect("{");
  lexer.expect_keyword("inputs");
  lexer.expect(":");
  const std::size_t m = lexer.expect_unsigned();
  lexer.expect(";");

  lexer.expect_keyword("states");
  lexer.expect(":");
  std::vector<std::string> states;
  std::vector<Rational> x0;
  if (!lexer.is_punct(";")) {
    do {
      const detail::Token t = lexer.peek();
      std::string name = lexer.expect_identifier();
      if (input_index(name) || name == "y") reject(t, "reserved name '" + name + "'");
      if (std::find(states.begin(), states.end(), name) != states.end()) {
        reject(t, "duplicate state");
      }
      states.push_back(std::move(name));
      x0.push_back(lexer.accept("=") ? detail::parse_rational_literal(lexer) : Rational(0));
    } while (lexer.accept(","));
  }
  lexer.expect(";");

  std::vector<std::string> names = states;
  for (std::size_t j = 1; j <= m; ++j) names.push_back("u" + std::to_string(j));
  const auto resolve = [&names](const detail::Token& t) -> Var {
    auto it = std::find(names.begin(), names.end(), t.text);
    if (it == names.end()) {
      const auto j = input_index(t.text);
      if (j && *j == 0) detail::Lexer::fail_at(t, "u0 is the constant 1 and cannot be used");
      detail::Lexer::fail_at(t, j ? "input exceeds the declared input count" : "unknown state");
    }
    return static_cast<Var>(it - names.begin());
  };

  std::vector<Equation> equations;
  Polynomial output;
  detail::Token output_at = lexer.peek();
  bool have_dynamics = false;
  bool have_output = false;
  while (!lexer.accept("}")) {
    if (lexer.accept_keyword("dynamics")) {
      if (have_dynamics) lexer.fail("duplicate dynamics block");
      have_dynamics = true;
      lexer.expect("{");
      while (!lexer.accept("}")) {
        const detail::Token t = lexer.peek();
        std::string name = lexer.expect_identifier();
        if (std::find(states.begin(), states.end(), name) == states.end()) detail::Lexer::fail_at(t, "unknown state");
        lexer.expect("'");
        lexer.expect("=");
        Polynomial rhs = detail::parse_expression(lexer, resolve);
        check_affine(rhs, names, t);
        equations.push_back({std::move(name), std::move(rhs), t});
        if (!lexer.is_punct("}")) lexer.expect(";");
      }
    } else if (lexer.accept_keyword("output")) {
      if (have_output) lexer.fail("duplicate output");
      have_output = true;
      lexer.expect(":");
      output_at = lexer.peek();
      output = detail::parse_expression(lexer, resolve);
    } else {
      lexer.fail("expected 'dynamics', 'output' or '}'");
    }
    if (!lexer.is_punct("}")) lexer.accept(";");
  }
  if (!have_output) lexer.fail("missing output");
  if (!lexer.at_end()) lexer.fail("unexpected trailing input");
  return assemble(m, std::move(states), std::move(x0), equations, output, names, output_at);
}

// x1' = u1 * x1; y = x1; x1(0) = 1; [inputs: m;]
PolynomialSystem parse_compact(detail::Lexer& lexer) {
  std::vector<std::string> names;
  const auto resolve = [&names](const detail::Token& t) -> Var {
    auto it = std::find(names.begin(), names.end(), t.text);
    if (it != names.end()) return static_cast<Var>(it - names.begin());
    names.push_back(t.text);
    return static_cast<Var>(names.size() - 1);
  };

  std::vector<std::string> states;
  std::map<std::string, Rational> x0;
  std::vector<Equation> equations;
  std::optional<Polynomial> output;
  detail::Token output_at;
  std::size_t declared_inputs = 0;

  auto declare = [&](const detail::Token& t) {
    if (input_index(t.text) || t.text == "y") reject(t, "reserved name '" + t.text + "'");
    if (std::find(states.begin(), states.end(), t.text) == states.end()) states.push_back(t.text);
  };

  while (!lexer.at_end()) {
    const detail::Token t = lexer.peek();
    if (t.kind != detail::TokenKind::Identifier) lexer.fail("expected a statement");
    lexer.next();
    if (t.text == "inputs" && lexer.accept(":")) {
      declared_inputs = lexer.expect_unsigned();
    } else if (lexer.accept("'")) {
      declare(t);
      lexer.expect("=");
      Polynomial rhs = detail::parse_expression(lexer, resolve);
      check_affine(rhs, names, t);
      equations.push_back({t.text, std::move(rhs), t});
    } else if (lexer.accept("(")) {
      const detail::Token zero = lexer.peek();
      if (lexer.expect_unsigned() != 0) detail::Lexer::fail_at(zero, "only x(0) initial values are supported");
      lexer.expect(")");
      lexer.expect("=");
      declare(t);
      if (x0.count(t.text)) reject(t, "duplicate initial value");
      x0[t.text] = detail::parse_rational_literal(lexer);
    } else if (t.text == "y") {
      if (output) reject(t, "duplicate output");
      lexer.expect("=");
      output_at = lexer.peek();
      output = detail::parse_expression(lexer, resolve);
    } else {
      lexer.fail("expected ', (0) or = after '" + t.text + "'");
    }
    if (!lexer.at_end()) lexer.expect(";");
  }
  if (!output) lexer.fail("missing output equation y = ...");

  std::size_t m = declared_inputs;
  for (const std::string& n : names) {
    if (auto j = input_index(n); j && *j > m && !declared_inputs) m = *j;
  }
  std::vector<Rational> initial;
  for (const std::string& s : states) initial.push_back(x0.count(s) ? x0.at(s) : Rational(0));
  return assemble(m, states, std::move(initial), equations, *output, names, output_at);
}

}  // namespace

PolynomialSystem parse_system(std::string_view text) {
  detail::Lexer lexer(text);
  if (lexer.is_identifier("system") && lexer.is_punct("{", 1)) return parse_block(lexer);
  return parse_compact(lexer);
}

std::string print_system(const PolynomialSystem& s) {
  s.validate();
  const std::size_t k = s.dimension();
  std::vector<std::string> names = s.states;
  for (std::size_t j = 1; j <= s.inputs; ++j) names.push_back("u" + std::to_string(j));

  std::ostringstream out;
  out << "system {\n  inputs: " << s.inputs << ";\n  states:";
  for (std::size_t i = 0; i < k; ++i) {
    out << (i ? ", " : " ") << s.states[i] << " = " << to_string(s.initial_state[i]);
  }
  out << ";\n  dynamics {\n";
  for (std::size_t i = 0; i < k; ++i) {
    Polynomial rhs = s.dynamics[0][i];
    for (std::size_t j = 1; j <= s.inputs; ++j) {
      rhs += Polynomial::variable(static_cast<Var>(k + j - 1)) * s.dynamics[j][i];
    }
    if (!rhs.is_zero()) out << "    " << s.states[i] << "' = " << rhs.to_string(names) << ";\n";
  }
  out << "  }\n  output: " << s.output.to_string(names) << ";\n}\n";
  return out.str();
}

ShuffleAutomaton system_to_automaton(const PolynomialSystem& s) {
  s.validate();
  return ShuffleAutomaton(s.inputs + 1, s.states, s.output, s.initial_state, s.dynamics);
}

PolynomialSystem automaton_to_system(const ShuffleAutomaton& a) {
  PolynomialSystem s;
  s.inputs = a.alphabet_size() - 1;
  for (const std::string& name : a.nonterminals()) {
    if (input_index(name) || name == "y") {
      std::vector<std::string> taken = a.nonterminals();
      taken.insert(taken.end(), s.states.begin(), s.states.end());
      s.states.push_back(fresh_name(name + "_s", taken));
    } else {
      s.states.push_back(name);
    }
  }
  s.initial_state = a.output();
  s.dynamics = a.transitions();
  s.output = a.initial();
  s.validate();
  return s;
}

PowerSeries::PowerSeries(std::vector<Rational> coefficients) : coefficients_(std::move(coefficients)) {
  if (coefficients_.empty()) coefficients_.emplace_back(0);
}

PowerSeries PowerSeries::constant(const Rational& c, std::size_t order) {
  PowerSeries out(order);
  out.coefficients_[0] = c;
  return out;
}

PowerSeries PowerSeries::truncated(std::size_t order) const {
  std::vector<Rational> c(order + 1, Rational(0));
  for (std::size_t n = 0; n <= order && n < coefficients_.size(); ++n) c[n] = coefficients_[n];
  return PowerSeries(std::move(c));
}

PowerSeries PowerSeries::integral() const {
  std::vector<Rational> c;
  c.reserve(coefficients_.size() + 1);
  c.emplace_back(0);
  c.insert(c.end(), coefficients_.begin(), coefficients_.end());
  return PowerSeries(std::move(c));
}

PowerSeries PowerSeries::derivative() const {
  if (coefficients_.size() == 1) return PowerSeries(std::size_t{0});
  return PowerSeries(std::vector<Rational>(coefficients_.begin() + 1, coefficients_.end()));
}

PowerSeries operator+(const PowerSeries& a, const PowerSeries& b) {
  PowerSeries out = a.truncated(std::min(a.order(), b.order()));
  for (std::size_t n = 0; n <= out.order(); ++n) out.coefficients_[n] += b.coefficients_[n];
  return out;
}

PowerSeries operator-(const PowerSeries& a, const PowerSeries& b) { return a + b * Rational(-1); }

PowerSeries operator*(const PowerSeries& a, const PowerSeries& b) {
  const std::size_t order = std::min(a.order(), b.order());
  PowerSeries out(order);
  for (std::size_t n = 0; n <= order; ++n) {
    Rational total(0);
    for (std::size_t i = 0; i <= n; ++i) {
      if (a.coefficients_[i] == 0 || b.coefficients_[n - i] == 0) continue;
      total += Rational(binomial(n, i)) * a.coefficients_[i] * b.coefficients_[n - i];
    }
    out.coefficients_[n] = total;
  }
  return out;
}

PowerSeries operator*(const PowerSeries& a, const Rational& c) {
  PowerSeries out = a;
  for (Rational& x : out.coefficients_) x *= c;
  return out;
}

std::string PowerSeries::to_string() const {
  std::string out = "[";
  for (std::size_t n = 0; n < coefficients_.size(); ++n) {
    if (n) out += ',';
    out += fliess::to_string(coefficients_[n]);
  }
  return out + "]";
}

PowerSeries parse_power_series(std::string_view text, std::size_t order) {
  detail::Lexer lexer(text);
  lexer.expect("[");
  std::vector<Rational> c;
  if (!lexer.is_punct("]")) {
    do {
      c.push_back(detail::parse_rational_literal(lexer));
    } while (lexer.accept(","));
  }
  lexer.expect("]");
  if (!lexer.at_end()) lexer.fail("unexpected trailing input");
  if (c.size() > order + 1) {
    throw ValidationError("series has " + std::to_string(c.size()) + " coefficients but the order is " +
                          std::to_string(order));
  }
  return PowerSeries(std::move(c)).truncated(order);
}

namespace {

std::vector<PowerSeries> checked_inputs(const std::vector<PowerSeries>& inputs, std::size_t m, std::size_t order) {
  if (inputs.size() != m) {
    throw ValidationError("expected " + std::to_string(m) + " input series, got " + std::to_string(inputs.size()));
  }
  std::vector<PowerSeries> u;
  u.reserve(m + 1);
  u.push_back(PowerSeries::constant(Rational(1), order));
  for (std::size_t j = 0; j < m; ++j) {
    if (inputs[j].order() < order) {
      throw ValidationError("input u" + std::to_string(j + 1) + " has order " + std::to_string(inputs[j].order()) +
                            " below " + std::to_string(order));
    }
    u.push_back(inputs[j].truncated(order));
  }
  return u;
}

}  // namespace

PowerSeries simulate(const PolynomialSystem& s, const std::vector<PowerSeries>& inputs, std::size_t order) {
  s.validate();
  const std::vector<PowerSeries> u = checked_inputs(inputs, s.inputs, order);
  const std::size_t k = s.dimension();
  const PowerSeries one = PowerSeries::constant(Rational(1), order);

  std::vector<PowerSeries> x;
  for (const Rational& c : s.initial_state) x.push_back(PowerSeries::constant(c, order));

  auto step = [&](const std::vector<PowerSeries>& current) {
    std::vector<PowerSeries> next;
    next.reserve(k);
    for (std::size_t i = 0; i < k; ++i) {
      PowerSeries rate(order);
      for (std::size_t j = 0; j <= s.inputs; ++j) {
        if (s.dynamics[j][i].is_zero()) continue;
        rate = rate + u[j] * s.dynamics[j][i].evaluate_in<PowerSeries>(current, one);
      }
      next.push_back(PowerSeries::constant(s.initial_state[i], order) + rate.integral().truncated(order));
    }
    return next;
  };

  for (std::size_t n = 0; n < order; ++n) x = step(x);
  // slot n is exact after n iterations, so one more must change nothing
  if (step(x) != x) throw InternalError("Picard iteration did not reach a fixed point");
  return s.output.evaluate_in<PowerSeries>(x, one);
}

PowerSeries iterated_integral(const Word& w, const std::vector<PowerSeries>& inputs, std::size_t order) {
  const std::vector<PowerSeries> u = checked_inputs(inputs, inputs.size(), order);
  PowerSeries f = PowerSeries::constant(Rational(1), order);
  for (auto it = w.rbegin(); it != w.rend(); ++it) {
    if (it->index >= u.size()) throw ValidationError("letter " + to_string(*it) + " has no input series");
    f = (u[it->index] * f).integral().truncated(order);
  }
  return f;
}

PowerSeries fliess_eval(const ShuffleAutomaton& a, const std::vector<PowerSeries>& inputs, std::size_t order) {
  if (inputs.size() + 1 != a.alphabet_size()) {
    throw ValidationError("expected " + std::to_string(a.alphabet_size() - 1) + " input series");
  }
  const std::vector<PowerSeries> u = checked_inputs(inputs, inputs.size(), order);
  const TruncatedSeries g = truncate(a, order);
  PowerSeries total(order);

  // F_{a w} = int(u_a F_w): walk words by prepending letters
  Word suffix;
  auto visit = [&](auto&& self, const PowerSeries& f) -> void {
    const Rational c = g.at(suffix);
    if (c != 0) total = total + f * c;
    if (suffix.size() == order) return;
    for (std::uint32_t letter = 0; letter < a.alphabet_size(); ++letter) {
      suffix.insert(suffix.begin(), Letter{letter});
      self(self, (u[letter] * f).integral().truncated(order));
      suffix.erase(suffix.begin());
    }
  };
  visit(visit, PowerSeries::constant(Rational(1), order));
  return total;
}

}  // namespace fliess
