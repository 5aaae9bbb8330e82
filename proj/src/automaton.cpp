#include "fliess/automaton.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>

#include "lexer.hpp"

namespace fliess {

namespace {

void check_variables(const Polynomial& p, std::size_t k, const std::string& where) {
  if (auto v = p.max_variable(); v && *v >= k) {
    throw ValidationError(where + " mentions an undeclared nonterminal (id " + std::to_string(*v) + ")");
  }
}

void check_letter(const ShuffleAutomaton& a, Letter letter) {
  if (letter.index >= a.alphabet_size()) {
    throw ValidationError("letter " + to_string(letter) + " outside alphabet of size " +
                          std::to_string(a.alphabet_size()));
  }
}

}  // namespace

ShuffleAutomaton::ShuffleAutomaton(std::size_t alphabet_size, std::vector<std::string> nonterminals,
                                   Polynomial initial, std::vector<Rational> output,
                                   std::vector<std::vector<Polynomial>> delta)
    : alphabet_size_(alphabet_size),
      nonterminals_(std::move(nonterminals)),
      initial_(std::move(initial)),
      output_(std::move(output)),
      delta_(std::move(delta)) {
  const std::size_t k = nonterminals_.size();
  if (alphabet_size_ == 0) throw ValidationError("alphabet must contain at least the drift letter a0");
  if (output_.size() != k) throw ValidationError("output vector size differs from nonterminal count");
  if (delta_.size() != alphabet_size_) throw ValidationError("transition table size differs from alphabet size");
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (nonterminals_[i] == nonterminals_[j]) throw ValidationError("duplicate nonterminal " + nonterminals_[i]);
    }
  }
  check_variables(initial_, k, "initial configuration");
  for (std::size_t a = 0; a < alphabet_size_; ++a) {
    if (delta_[a].size() != k) throw ValidationError("transition row size differs from nonterminal count");
    for (std::size_t i = 0; i < k; ++i) {
      check_variables(delta_[a][i], k, "transition of " + nonterminals_[i] + " on a" + std::to_string(a));
    }
  }
}

const Polynomial& ShuffleAutomaton::transition(Letter a, Var x) const {
  if (a.index >= alphabet_size_ || x >= nonterminals_.size()) throw ValidationError("transition index out of range");
  return delta_[a.index][x];
}

ShuffleAutomaton ShuffleAutomaton::with_initial(Polynomial initial) const {
  return ShuffleAutomaton(alphabet_size_, nonterminals_, std::move(initial), output_, delta_);
}

Polynomial derive_config(const ShuffleAutomaton& a, Letter letter, const Polynomial& cfg) {
  check_letter(a, letter);
  const auto& row = a.transitions()[letter.index];
  Polynomial out;
  for (const auto& [m, c] : cfg.terms()) {
    for (const auto& [v, e] : m.factors()) {
      if (v >= row.size()) throw ValidationError("configuration mentions a foreign nonterminal (id " + std::to_string(v) + ")");
      out.add_scaled(c * e, m.without_one(v), row[v]);
    }
  }
  return out;
}

Polynomial derive_config(const ShuffleAutomaton& a, const Word& w, const Polynomial& cfg) {
  Polynomial current = cfg;
  for (Letter letter : w) {
    if (current.is_zero()) break;
    current = derive_config(a, letter, current);
  }
  return current;
}

Rational coeff(const ShuffleAutomaton& a, const Polynomial& cfg, const Word& w) {
  for (Letter letter : w) check_letter(a, letter);
  return derive_config(a, w, cfg).evaluate(a.output());
}

Rational coeff(const ShuffleAutomaton& a, const Word& w) { return coeff(a, a.initial(), w); }

ShuffleAutomaton scale(const Rational& c, const ShuffleAutomaton& a) { return a.with_initial(a.initial() * c); }

std::string fresh_name(const std::string& base, const std::vector<std::string>& taken) {
  auto used = [&](const std::string& n) { return std::find(taken.begin(), taken.end(), n) != taken.end(); };
  if (!used(base)) return base;
  for (std::size_t i = 2;; ++i) {
    std::string candidate = base + "_" + std::to_string(i);
    if (!used(candidate)) return candidate;
  }
}

ShuffleAutomaton widen_alphabet(const ShuffleAutomaton& a, std::size_t alphabet_size) {
  if (alphabet_size < a.alphabet_size()) throw ValidationError("cannot shrink an alphabet");
  auto delta = a.transitions();
  delta.resize(alphabet_size, std::vector<Polynomial>(a.size()));
  return ShuffleAutomaton(alphabet_size, a.nonterminals(), a.initial(), a.output(), std::move(delta));
}

DisjointUnion disjoint_union(const ShuffleAutomaton& left, const ShuffleAutomaton& right) {
  const std::size_t alphabet = std::max(left.alphabet_size(), right.alphabet_size());
  const Var offset = static_cast<Var>(left.size());
  auto shift = [offset](Var v) { return v + offset; };

  std::vector<std::string> names = left.nonterminals();
  for (const auto& n : right.nonterminals()) names.push_back(fresh_name(n, names));
  std::vector<Rational> output = left.output();
  output.insert(output.end(), right.output().begin(), right.output().end());

  std::vector<std::vector<Polynomial>> delta(alphabet);
  for (std::size_t a = 0; a < alphabet; ++a) {
    if (a < left.alphabet_size()) {
      delta[a] = left.transitions()[a];
    } else {
      delta[a].resize(left.size());
    }
    for (std::size_t i = 0; i < right.size(); ++i) {
      delta[a].push_back(a < right.alphabet_size() ? right.transitions()[a][i].renamed(shift) : Polynomial());
    }
  }
  return {ShuffleAutomaton(alphabet, std::move(names), left.initial(), std::move(output), std::move(delta)), offset};
}

ShuffleAutomaton sum(const ShuffleAutomaton& a, const ShuffleAutomaton& b) {
  auto u = disjoint_union(a, b);
  const Var offset = u.offset;
  return u.automaton.with_initial(a.initial() + b.initial().renamed([offset](Var v) { return v + offset; }));
}

ShuffleAutomaton shuffle(const ShuffleAutomaton& a, const ShuffleAutomaton& b) {
  auto u = disjoint_union(a, b);
  const Var offset = u.offset;
  return u.automaton.with_initial(a.initial() * b.initial().renamed([offset](Var v) { return v + offset; }));
}

ShuffleAutomaton left_derivative(const ShuffleAutomaton& a, Letter letter) {
  return a.with_initial(derive_config(a, letter, a.initial()));
}

ShuffleAutomaton right_derivative(const ShuffleAutomaton& a, Letter letter) {
  check_letter(a, letter);
  const std::size_t k = a.size();
  const auto y = [k](std::size_t i) { return Polynomial::variable(static_cast<Var>(k + i)); };

  std::vector<std::string> names = a.nonterminals();
  for (std::size_t i = 0; i < k; ++i) {
    names.push_back(fresh_name(a.nonterminals()[i] + "_r" + std::to_string(letter.index), names));
  }

  std::vector<Rational> output = a.output();
  for (std::size_t i = 0; i < k; ++i) output.push_back(a.transitions()[letter.index][i].evaluate(a.output()));

  std::vector<std::vector<Polynomial>> delta = a.transitions();
  for (std::size_t b = 0; b < a.alphabet_size(); ++b) {
    for (std::size_t i = 0; i < k; ++i) {
      const Polynomial& dx = a.transitions()[b][i];
      Polynomial dy;
      for (Var j : dx.variables()) dy += dx.partial(j) * y(j);
      delta[b].push_back(std::move(dy));
    }
  }

  Polynomial init;
  for (Var j : a.initial().variables()) init += a.initial().partial(j) * y(j);
  return ShuffleAutomaton(a.alphabet_size(), std::move(names), std::move(init), std::move(output), std::move(delta));
}

ShuffleAutomaton word_automaton(std::size_t alphabet_size, const Word& w, const Rational& c) {
  const std::size_t n = w.size();
  std::vector<std::string> names;
  for (std::size_t i = 0; i <= n; ++i) names.push_back("W" + std::to_string(i));
  std::vector<Rational> output(n + 1, Rational(0));
  output[n] = 1;
  std::vector<std::vector<Polynomial>> delta(alphabet_size, std::vector<Polynomial>(n + 1));
  for (std::size_t i = 0; i < n; ++i) {
    if (w[i].index >= alphabet_size) throw ValidationError("word letter outside alphabet");
    delta[w[i].index][i] = Polynomial::variable(static_cast<Var>(i + 1));
  }
  return ShuffleAutomaton(alphabet_size, std::move(names), Polynomial::variable(0) * c, std::move(output),
                          std::move(delta));
}

ShuffleAutomaton constant_automaton(std::size_t alphabet_size, const Rational& c) {
  return ShuffleAutomaton(alphabet_size, {}, Polynomial(c), {}, std::vector<std::vector<Polynomial>>(alphabet_size));
}

ShuffleAutomaton zero_automaton(std::size_t alphabet_size) { return constant_automaton(alphabet_size, Rational(0)); }

namespace {

// Keeps the nonterminals with keep[i] set, renumbered in order. The
// polynomials must already avoid the dropped ones.
ShuffleAutomaton keep_only(const ShuffleAutomaton& a, const std::vector<bool>& keep, const Polynomial& init,
                           const std::vector<std::vector<Polynomial>>& delta) {
  std::vector<Var> id(a.size(), 0);
  std::vector<std::string> names;
  std::vector<Rational> output;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!keep[i]) continue;
    id[i] = static_cast<Var>(names.size());
    names.push_back(a.nonterminals()[i]);
    output.push_back(a.output()[i]);
  }
  const auto rename = [&id](Var v) { return id[v]; };
  std::vector<std::vector<Polynomial>> out(a.alphabet_size());
  for (std::size_t b = 0; b < a.alphabet_size(); ++b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (keep[i]) out[b].push_back(delta[b][i].renamed(rename));
    }
  }
  return ShuffleAutomaton(a.alphabet_size(), std::move(names), init.renamed(rename), std::move(output),
                          std::move(out));
}

struct SignatureLess {
  bool operator()(const std::pair<std::size_t, std::vector<Polynomial>>& x,
                  const std::pair<std::size_t, std::vector<Polynomial>>& y) const {
    if (x.first != y.first) return x.first < y.first;
    return std::lexicographical_compare(x.second.begin(), x.second.end(), y.second.begin(), y.second.end(),
                                        PolynomialLess{});
  }
};

// Coarsest partition with equal outputs inside a class and transitions
// equal after renaming every nonterminal to its class.
ShuffleAutomaton merge_equivalent(const ShuffleAutomaton& a) {
  const std::size_t k = a.size();
  std::vector<std::size_t> cls(k);
  std::size_t count = 0;
  {
    std::map<Rational, std::size_t> by_output;
    for (std::size_t i = 0; i < k; ++i) cls[i] = by_output.emplace(a.output()[i], by_output.size()).first->second;
    count = by_output.size();
  }
  while (true) {
    const auto phi = [&cls](Var v) { return static_cast<Var>(cls[v]); };
    std::map<std::pair<std::size_t, std::vector<Polynomial>>, std::size_t, SignatureLess> ids;
    std::vector<std::size_t> next(k);
    for (std::size_t i = 0; i < k; ++i) {
      std::pair<std::size_t, std::vector<Polynomial>> sig{cls[i], {}};
      for (std::size_t b = 0; b < a.alphabet_size(); ++b) sig.second.push_back(a.transitions()[b][i].renamed(phi));
      next[i] = ids.emplace(std::move(sig), ids.size()).first->second;
    }
    const bool stable = ids.size() == count;
    cls = std::move(next);
    count = ids.size();
    if (stable) break;
  }
  if (count == k) return a;

  // class ids follow first occurrence, so the representative of class c is
  // its first member and renaming to class ids keeps the representatives
  const auto phi = [&cls](Var v) { return static_cast<Var>(cls[v]); };
  std::vector<bool> keep(k, false);
  std::vector<bool> seen(count, false);
  for (std::size_t i = 0; i < k; ++i) {
    if (!seen[cls[i]]) keep[i] = seen[cls[i]] = true;
  }
  std::vector<Var> rep_of_class(count);
  for (std::size_t i = 0; i < k; ++i) {
    if (keep[i]) rep_of_class[cls[i]] = static_cast<Var>(i);
  }
  const auto to_rep = [&](Var v) { return rep_of_class[phi(v)]; };
  std::vector<std::vector<Polynomial>> delta(a.alphabet_size(), std::vector<Polynomial>(k));
  for (std::size_t b = 0; b < a.alphabet_size(); ++b) {
    for (std::size_t i = 0; i < k; ++i) {
      if (keep[i]) delta[b][i] = a.transitions()[b][i].renamed(to_rep);
    }
  }
  return keep_only(a, keep, a.initial().renamed(to_rep), delta);
}

Polynomial substitute(const Polynomial& p, const std::vector<std::optional<Rational>>& value) {
  Polynomial out;
  for (const auto& [m, c] : p.terms()) {
    Rational coefficient = c;
    std::vector<Monomial::Factor> rest;
    for (const auto& [v, e] : m.factors()) {
      if (value[v]) {
        coefficient *= pow(*value[v], e);
      } else {
        rest.emplace_back(v, e);
      }
    }
    if (coefficient != 0) out.add_term(Monomial::from_factors(std::move(rest)), coefficient);
  }
  return out;
}

// Nonterminals with zero transitions never move: replace them by their output.
ShuffleAutomaton drop_constants(const ShuffleAutomaton& a) {
  const std::size_t k = a.size();
  std::vector<std::optional<Rational>> value(k);
  std::vector<bool> keep(k, true);
  bool any = false;
  for (std::size_t i = 0; i < k; ++i) {
    bool constant = true;
    for (std::size_t b = 0; b < a.alphabet_size() && constant; ++b) constant = a.transitions()[b][i].is_zero();
    if (constant) {
      value[i] = a.output()[i];
      keep[i] = false;
      any = true;
    }
  }
  if (!any) return a;
  std::vector<std::vector<Polynomial>> delta(a.alphabet_size(), std::vector<Polynomial>(k));
  for (std::size_t b = 0; b < a.alphabet_size(); ++b) {
    for (std::size_t i = 0; i < k; ++i) {
      if (keep[i]) delta[b][i] = substitute(a.transitions()[b][i], value);
    }
  }
  return keep_only(a, keep, substitute(a.initial(), value), delta);
}

ShuffleAutomaton drop_unreachable(const ShuffleAutomaton& a) {
  const std::size_t k = a.size();
  std::vector<bool> keep(k, false);
  std::vector<Var> stack = a.initial().variables();
  for (Var v : stack) keep[v] = true;
  while (!stack.empty()) {
    const Var v = stack.back();
    stack.pop_back();
    for (std::size_t b = 0; b < a.alphabet_size(); ++b) {
      for (Var u : a.transitions()[b][v].variables()) {
        if (!keep[u]) {
          keep[u] = true;
          stack.push_back(u);
        }
      }
    }
  }
  if (std::all_of(keep.begin(), keep.end(), [](bool x) { return x; })) return a;
  return keep_only(a, keep, a.initial(), a.transitions());
}

}  // namespace

ShuffleAutomaton simplify(const ShuffleAutomaton& a) {
  ShuffleAutomaton current = a;
  while (true) {
    const std::size_t before = current.size();
    current = drop_unreachable(drop_constants(merge_equivalent(current)));
    if (current.size() == before) return current;
  }
}

// ------------------------------------------------------------------ text I/O

namespace {

Var resolve_declared(const detail::Token& t, const std::vector<std::string>& names) {
  auto it = std::find(names.begin(), names.end(), t.text);
  if (it == names.end()) detail::Lexer::fail_at(t, "unknown nonterminal");
  return static_cast<Var>(it - names.begin());
}

std::size_t parse_letter_token(detail::Lexer& lexer, std::size_t alphabet_size) {
  const detail::Token t = lexer.peek();
  if (t.kind != detail::TokenKind::Identifier) lexer.fail("expected a letter a<j>");
  Word w;
  try {
    w = parse_word(t.text);
  } catch (const ValidationError&) {
    detail::Lexer::fail_at(t, "expected a letter a<j>");
  }
  if (w.size() != 1) detail::Lexer::fail_at(t, "expected a single letter");
  if (w[0].index >= alphabet_size) detail::Lexer::fail_at(t, "letter outside the declared alphabet");
  lexer.next();
  return w[0].index;
}

}  // namespace

ShuffleAutomaton parse_automaton(std::string_view text) {
  detail::Lexer lexer(text);
  lexer.expect_keyword("automaton");
  lexer.expect("{");

  lexer.expect_keyword("alphabet");
  lexer.expect(":");
  const detail::Token alphabet_token = lexer.peek();
  const auto alphabet = lexer.expect_unsigned();
  if (alphabet == 0 || alphabet > 1000) detail::Lexer::fail_at(alphabet_token, "alphabet size must be in 1..1000");
  lexer.expect(";");

  lexer.expect_keyword("nonterminals");
  lexer.expect(":");
  std::vector<std::string> names;
  if (!lexer.is_punct(";")) {
    do {
      const detail::Token t = lexer.peek();
      std::string name = lexer.expect_identifier();
      if (std::find(names.begin(), names.end(), name) != names.end()) {
        detail::Lexer::fail_at(t, "duplicate nonterminal");
      }
      names.push_back(std::move(name));
    } while (lexer.accept(","));
  }
  lexer.expect(";");

  const auto resolve = [&names](const detail::Token& t) { return resolve_declared(t, names); };
  const std::size_t k = names.size();
  Polynomial init;
  bool have_init = false;
  std::vector<Rational> output(k, Rational(0));
  std::vector<std::vector<Polynomial>> delta(alphabet, std::vector<Polynomial>(k));

  while (!lexer.accept("}")) {
    if (lexer.accept_keyword("init")) {
      if (have_init) lexer.fail("duplicate init");
      lexer.expect(":");
      init = detail::parse_expression(lexer, resolve);
      have_init = true;
    } else if (lexer.accept_keyword("output")) {
      lexer.expect(":");
      do {
        const Var x = resolve(lexer.peek());
        lexer.next();
        lexer.expect("=");
        output[x] = detail::parse_rational_literal(lexer);
      } while (lexer.accept(","));
    } else if (lexer.accept_keyword("delta")) {
      const std::size_t a = parse_letter_token(lexer, alphabet);
      lexer.expect(":");
      do {
        const Var x = resolve(lexer.peek());
        lexer.next();
        lexer.expect("->");
        delta[a][x] = detail::parse_expression(lexer, resolve);
      } while (lexer.accept(","));
    } else {
      lexer.fail("expected 'init', 'output', 'delta' or '}'");
    }
    if (!lexer.is_punct("}")) lexer.expect(";");
  }
  if (!lexer.at_end()) lexer.fail("unexpected input after automaton");
  if (!have_init) throw ParseError("missing init", 1, 1);
  return ShuffleAutomaton(alphabet, std::move(names), std::move(init), std::move(output), std::move(delta));
}

std::string print_automaton(const ShuffleAutomaton& a) {
  const auto& names = a.nonterminals();
  std::ostringstream out;
  out << "automaton { alphabet: " << a.alphabet_size() << ";\n";
  out << "  nonterminals: ";
  for (std::size_t i = 0; i < names.size(); ++i) out << (i ? ", " : "") << names[i];
  out << ";\n";
  out << "  init: " << a.initial().to_string(names) << ";\n";
  if (!names.empty()) {
    out << "  output: ";
    for (std::size_t i = 0; i < names.size(); ++i) {
      out << (i ? ", " : "") << names[i] << " = " << to_string(a.output()[i]);
    }
    out << ";\n";
  }
  for (std::size_t letter = 0; letter < a.alphabet_size(); ++letter) {
    bool first = true;
    for (std::size_t i = 0; i < names.size(); ++i) {
      const Polynomial& p = a.transitions()[letter][i];
      if (p.is_zero()) continue;
      out << (first ? "  delta a" + std::to_string(letter) + ": " : ", ") << names[i] << " -> " << p.to_string(names);
      first = false;
    }
    if (!first) out << ";\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace fliess
