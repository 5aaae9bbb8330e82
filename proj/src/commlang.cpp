#include "fliess/commlang.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

#include "lexer.hpp"

namespace fliess {

struct CountConstraint::Node {
  enum class Kind { Atom, Not, And, Or, True };
  Kind kind = Kind::True;
  Atom atom;
  std::shared_ptr<const Node> left;
  std::shared_ptr<const Node> right;
};

namespace {

using Node = CountConstraint::Node;
using Atom = CountConstraint::Atom;
using Relation = CountConstraint::Relation;

constexpr std::size_t kMaxMonoidSize = 512;

std::vector<std::uint32_t> normalize_group(std::vector<std::uint32_t> group) {
  if (group.empty()) throw ValidationError("count() needs at least one letter");
  std::sort(group.begin(), group.end());
  group.erase(std::unique(group.begin(), group.end()), group.end());
  return group;
}

bool eval_node(const Node& n, const std::function<bool(const Atom&)>& atom) {
  switch (n.kind) {
    case Node::Kind::Atom:
      return atom(n.atom);
    case Node::Kind::Not:
      return !eval_node(*n.left, atom);
    case Node::Kind::And:
      return eval_node(*n.left, atom) && eval_node(*n.right, atom);
    case Node::Kind::Or:
      return eval_node(*n.left, atom) || eval_node(*n.right, atom);
    case Node::Kind::True:
      return true;
  }
  return false;
}

void collect_atoms(const Node& n, std::vector<Atom>& out) {
  if (n.kind == Node::Kind::Atom) out.push_back(n.atom);
  if (n.left) collect_atoms(*n.left, out);
  if (n.right) collect_atoms(*n.right, out);
}

bool atom_holds(const Atom& a, unsigned count) {
  switch (a.relation) {
    case Relation::AtLeast:
      return count >= a.value;
    case Relation::AtMost:
      return count <= a.value;
    case Relation::Exactly:
      return count == a.value;
    case Relation::Modulo:
      return count % a.modulus == a.value;
  }
  return false;
}

std::string group_to_string(const std::vector<std::uint32_t>& group) {
  std::string s = "count(";
  for (std::size_t i = 0; i < group.size(); ++i) s += (i ? ", a" : "a") + std::to_string(group[i]);
  return s + ")";
}

std::string node_to_string(const Node& n) {
  switch (n.kind) {
    case Node::Kind::Atom: {
      const Atom& a = n.atom;
      const std::string g = group_to_string(a.group);
      switch (a.relation) {
        case Relation::AtLeast:
          return g + " >= " + std::to_string(a.value);
        case Relation::AtMost:
          return g + " <= " + std::to_string(a.value);
        case Relation::Exactly:
          return g + " == " + std::to_string(a.value);
        case Relation::Modulo:
          return g + " % " + std::to_string(a.modulus) + " == " + std::to_string(a.value);
      }
      return g;
    }
    case Node::Kind::Not:
      return "!(" + node_to_string(*n.left) + ")";
    case Node::Kind::And:
      return "(" + node_to_string(*n.left) + " && " + node_to_string(*n.right) + ")";
    case Node::Kind::Or:
      return "(" + node_to_string(*n.left) + " || " + node_to_string(*n.right) + ")";
    case Node::Kind::True:
      return "true";
  }
  return "";
}

}  // namespace

// ------------------------------------------------------------ constraints

CountConstraint CountConstraint::at_least(std::vector<std::uint32_t> group, unsigned n) {
  auto node = std::make_shared<Node>();
  node->kind = Node::Kind::Atom;
  node->atom = Atom{normalize_group(std::move(group)), Relation::AtLeast, n, 1};
  return CountConstraint(node);
}

CountConstraint CountConstraint::at_most(std::vector<std::uint32_t> group, unsigned n) {
  auto node = std::make_shared<Node>();
  node->kind = Node::Kind::Atom;
  node->atom = Atom{normalize_group(std::move(group)), Relation::AtMost, n, 1};
  return CountConstraint(node);
}

CountConstraint CountConstraint::exactly(std::vector<std::uint32_t> group, unsigned n) {
  auto node = std::make_shared<Node>();
  node->kind = Node::Kind::Atom;
  node->atom = Atom{normalize_group(std::move(group)), Relation::Exactly, n, 1};
  return CountConstraint(node);
}

CountConstraint CountConstraint::modulo(std::vector<std::uint32_t> group, unsigned modulus, unsigned residue) {
  if (modulus == 0) throw ValidationError("modulus must be at least 1");
  if (residue >= modulus) throw ValidationError("residue must be smaller than the modulus");
  auto node = std::make_shared<Node>();
  node->kind = Node::Kind::Atom;
  node->atom = Atom{normalize_group(std::move(group)), Relation::Modulo, residue, modulus};
  return CountConstraint(node);
}

CountConstraint CountConstraint::always() { return CountConstraint(std::make_shared<Node>()); }

CountConstraint operator&&(const CountConstraint& a, const CountConstraint& b) {
  auto node = std::make_shared<Node>();
  node->kind = Node::Kind::And;
  node->left = a.root_;
  node->right = b.root_;
  return CountConstraint(node);
}

CountConstraint operator||(const CountConstraint& a, const CountConstraint& b) {
  auto node = std::make_shared<Node>();
  node->kind = Node::Kind::Or;
  node->left = a.root_;
  node->right = b.root_;
  return CountConstraint(node);
}

CountConstraint operator!(const CountConstraint& a) {
  auto node = std::make_shared<Node>();
  node->kind = Node::Kind::Not;
  node->left = a.root_;
  return CountConstraint(node);
}

bool CountConstraint::evaluate(const std::vector<unsigned>& counts) const {
  return eval_node(*root_, [&](const Atom& a) {
    unsigned total = 0;
    for (auto j : a.group) total += j < counts.size() ? counts[j] : 0;
    return atom_holds(a, total);
  });
}

bool CountConstraint::evaluate(const Word& w) const {
  std::vector<unsigned> counts;
  for (Letter a : w) {
    if (a.index >= counts.size()) counts.resize(a.index + 1, 0);
    ++counts[a.index];
  }
  return evaluate(counts);
}

std::vector<CountConstraint::Atom> CountConstraint::atoms() const {
  std::vector<Atom> out;
  collect_atoms(*root_, out);
  return out;
}

std::optional<std::uint32_t> CountConstraint::max_letter() const {
  std::optional<std::uint32_t> best;
  for (const auto& a : atoms()) {
    if (!best || a.group.back() > *best) best = a.group.back();
  }
  return best;
}

std::string CountConstraint::to_string() const { return node_to_string(*root_); }

// ---------------------------------------------------------------- parsing

namespace {

class ConstraintParser {
 public:
  ConstraintParser(std::string_view text, std::size_t alphabet_size) : lexer_(text), alphabet_size_(alphabet_size) {}

  CountConstraint parse() {
    CountConstraint c = parse_or();
    if (!lexer_.at_end()) lexer_.fail("unexpected trailing input");
    return c;
  }

 private:
  CountConstraint parse_or() {
    CountConstraint c = parse_and();
    while (lexer_.accept("||")) c = c || parse_and();
    return c;
  }

  CountConstraint parse_and() {
    CountConstraint c = parse_unary();
    while (lexer_.accept("&&")) c = c && parse_unary();
    return c;
  }

  CountConstraint parse_unary() {
    if (lexer_.accept("!")) return !parse_unary();
    if (lexer_.accept("(")) {
      CountConstraint c = parse_or();
      lexer_.expect(")");
      return c;
    }
    if (lexer_.accept_keyword("true")) return CountConstraint::always();
    if (lexer_.accept_keyword("false")) return !CountConstraint::always();
    return parse_atom();
  }

  std::uint32_t parse_letter() {
    const detail::Token t = lexer_.peek();
    if (t.kind != detail::TokenKind::Identifier) lexer_.fail("expected a letter a<j>");
    Word w;
    try {
      w = parse_word(t.text);
    } catch (const ValidationError&) {
      detail::Lexer::fail_at(t, "expected a letter a<j>");
    }
    if (w.size() != 1) detail::Lexer::fail_at(t, "expected a single letter");
    if (w[0].index >= alphabet_size_) detail::Lexer::fail_at(t, "letter outside the alphabet");
    lexer_.next();
    return w[0].index;
  }

  unsigned parse_count_value() {
    const detail::Token t = lexer_.peek();
    const auto v = lexer_.expect_unsigned();
    if (v > 100000) detail::Lexer::fail_at(t, "count bound too large");
    return static_cast<unsigned>(v);
  }

  CountConstraint parse_atom() {
    lexer_.expect_keyword("count");
    lexer_.expect("(");
    std::vector<std::uint32_t> group;
    do {
      group.push_back(parse_letter());
    } while (lexer_.accept(","));
    lexer_.expect(")");

    if (lexer_.accept("%")) {
      const detail::Token mod_token = lexer_.peek();
      const unsigned modulus = parse_count_value();
      if (modulus == 0) detail::Lexer::fail_at(mod_token, "modulus must be at least 1");
      lexer_.expect("==");
      const detail::Token res_token = lexer_.peek();
      const unsigned residue = parse_count_value();
      if (residue >= modulus) detail::Lexer::fail_at(res_token, "residue must be smaller than the modulus");
      return CountConstraint::modulo(group, modulus, residue);
    }
    const detail::Token op = lexer_.next();
    if (op.kind != detail::TokenKind::Punct) detail::Lexer::fail_at(op, "expected a comparison");
    const unsigned n = parse_count_value();
    if (op.text == "==") return CountConstraint::exactly(group, n);
    if (op.text == "!=") return !CountConstraint::exactly(group, n);
    if (op.text == ">=") return CountConstraint::at_least(group, n);
    if (op.text == "<=") return CountConstraint::at_most(group, n);
    if (op.text == ">") return CountConstraint::at_least(group, n + 1);
    if (op.text == "<") return n == 0 ? !CountConstraint::always() : CountConstraint::at_most(group, n - 1);
    detail::Lexer::fail_at(op, "expected a comparison");
  }

  detail::Lexer lexer_;
  std::size_t alphabet_size_;
};

}  // namespace

CountConstraint parse_constraint(std::string_view text, std::size_t alphabet_size) {
  return ConstraintParser(text, alphabet_size).parse();
}

// ------------------------------------------------------------- recognizers

CommutativeRecognizer::CommutativeRecognizer(std::size_t alphabet_size, std::size_t size, std::vector<Element> table,
                                             Element identity, std::vector<Element> hom, std::vector<bool> accepting)
    : alphabet_size_(alphabet_size),
      size_(size),
      table_(std::move(table)),
      identity_(identity),
      hom_(std::move(hom)),
      accepting_(std::move(accepting)) {
  if (size_ == 0) throw ValidationError("monoid must be nonempty");
  if (table_.size() != size_ * size_) throw ValidationError("multiplication table has wrong size");
  if (identity_ >= size_) throw ValidationError("identity outside the monoid");
  if (hom_.size() != alphabet_size_) throw ValidationError("homomorphism must map every letter");
  if (accepting_.size() != size_) throw ValidationError("accepting set has wrong size");
  for (auto e : table_) {
    if (e >= size_) throw ValidationError("multiplication table leaves the monoid");
  }
  for (auto e : hom_) {
    if (e >= size_) throw ValidationError("letter image outside the monoid");
  }
  for (Element x = 0; x < size_; ++x) {
    if (multiply(identity_, x) != x || multiply(x, identity_) != x) throw ValidationError("identity law fails");
    for (Element y = 0; y < size_; ++y) {
      const Element xy = multiply(x, y);
      if (xy != multiply(y, x)) throw ValidationError("monoid is not commutative");
      for (Element z = 0; z < size_; ++z) {
        if (multiply(xy, z) != multiply(x, multiply(y, z))) throw ValidationError("monoid is not associative");
      }
    }
  }
}

CommutativeRecognizer::Element CommutativeRecognizer::image(Letter a) const {
  if (a.index >= alphabet_size_) throw ValidationError("letter " + to_string(a) + " outside recognizer alphabet");
  return hom_[a.index];
}

CommutativeRecognizer::Element CommutativeRecognizer::image(const Word& w) const {
  Element m = identity_;
  for (Letter a : w) m = multiply(m, image(a));
  return m;
}

CommutativeRecognizer CommutativeRecognizer::with_accepting(std::vector<bool> accepting) const {
  if (accepting.size() != size_) throw ValidationError("accepting set has wrong size");
  CommutativeRecognizer r = *this;
  r.accepting_ = std::move(accepting);
  return r;
}

void CommutativeRecognizer::set_labels(std::vector<std::string> labels) {
  if (labels.size() != size_) throw ValidationError("label count differs from monoid size");
  labels_ = std::move(labels);
}

CommutativeRecognizer compile_constraint(const CountConstraint& c, std::size_t alphabet_size) {
  if (auto top = c.max_letter(); top && *top >= alphabet_size) {
    throw ValidationError("constraint mentions a" + std::to_string(*top) + " outside the alphabet");
  }
  struct Counter {
    std::vector<std::uint32_t> group;
    unsigned saturation = 0;  // values 0..saturation, the top one meaning ">= saturation"
    unsigned period = 1;
  };
  std::vector<Counter> counters;
  auto counter_for = [&](const std::vector<std::uint32_t>& group) -> Counter& {
    for (auto& ctr : counters) {
      if (ctr.group == group) return ctr;
    }
    counters.push_back({group, 0, 1});
    return counters.back();
  };
  for (const auto& atom : c.atoms()) {
    Counter& ctr = counter_for(atom.group);
    switch (atom.relation) {
      case Relation::AtLeast:
        ctr.saturation = std::max(ctr.saturation, atom.value);
        break;
      case Relation::AtMost:
      case Relation::Exactly:
        ctr.saturation = std::max(ctr.saturation, atom.value + 1);
        break;
      case Relation::Modulo:
        ctr.period = std::lcm(ctr.period, atom.modulus);
        break;
    }
  }

  // mixed-radix encoding; per counter the digit is sat * period + residue
  std::vector<std::size_t> radix;
  std::size_t size = 1;
  for (const auto& ctr : counters) {
    radix.push_back(static_cast<std::size_t>(ctr.saturation + 1) * ctr.period);
    size *= radix.back();
    if (size > kMaxMonoidSize) throw ValidationError("constraint needs a monoid larger than " + std::to_string(kMaxMonoidSize));
  }
  auto decode = [&](std::size_t e) {
    std::vector<std::pair<unsigned, unsigned>> digits;
    for (std::size_t i = 0; i < counters.size(); ++i) {
      const std::size_t d = e % radix[i];
      e /= radix[i];
      digits.emplace_back(static_cast<unsigned>(d / counters[i].period), static_cast<unsigned>(d % counters[i].period));
    }
    return digits;
  };
  auto encode = [&](const std::vector<std::pair<unsigned, unsigned>>& digits) {
    std::size_t e = 0;
    for (std::size_t i = counters.size(); i-- > 0;) {
      e = e * radix[i] + digits[i].first * counters[i].period + digits[i].second;
    }
    return static_cast<CommutativeRecognizer::Element>(e);
  };

  std::vector<CommutativeRecognizer::Element> table(size * size);
  for (std::size_t x = 0; x < size; ++x) {
    const auto dx = decode(x);
    for (std::size_t y = 0; y < size; ++y) {
      const auto dy = decode(y);
      std::vector<std::pair<unsigned, unsigned>> dz(counters.size());
      for (std::size_t i = 0; i < counters.size(); ++i) {
        dz[i] = {std::min(dx[i].first + dy[i].first, counters[i].saturation),
                 (dx[i].second + dy[i].second) % counters[i].period};
      }
      table[x * size + y] = encode(dz);
    }
  }

  std::vector<CommutativeRecognizer::Element> hom(alphabet_size);
  for (std::uint32_t a = 0; a < alphabet_size; ++a) {
    std::vector<std::pair<unsigned, unsigned>> d(counters.size());
    for (std::size_t i = 0; i < counters.size(); ++i) {
      const bool in_group = std::binary_search(counters[i].group.begin(), counters[i].group.end(), a);
      d[i] = in_group ? std::make_pair(std::min(1U, counters[i].saturation), 1U % counters[i].period)
                      : std::make_pair(0U, 0U);
    }
    hom[a] = encode(d);
  }

  std::vector<bool> accepting(size);
  std::vector<std::string> labels(size);
  for (std::size_t e = 0; e < size; ++e) {
    const auto d = decode(e);
    accepting[e] = eval_node(*c.root(), [&](const Atom& atom) {
      for (std::size_t i = 0; i < counters.size(); ++i) {
        if (counters[i].group != atom.group) continue;
        const auto [sat, residue] = d[i];
        if (atom.relation == Relation::Modulo) return residue % atom.modulus == atom.value;
        // sat < saturation is an exact count; sat == saturation means "at least"
        // and every threshold on this counter is at most `saturation`.
        return atom_holds(atom, sat);
      }
      return false;
    });
    std::ostringstream label;
    for (std::size_t i = 0; i < counters.size(); ++i) {
      if (i) label << ",";
      label << group_to_string(counters[i].group);
      if (counters[i].saturation > 0) {
        label << (d[i].first == counters[i].saturation ? ">=" : "=") << d[i].first;
      }
      if (counters[i].period > 1) label << "%" << counters[i].period << "=" << d[i].second;
    }
    labels[e] = label.str();
  }

  CommutativeRecognizer r(alphabet_size, size, std::move(table), 0, std::move(hom), std::move(accepting));
  r.set_labels(std::move(labels));
  return r;
}

bool member(const CommutativeRecognizer& r, const Word& w) { return r.member(w); }

CommutativeRecognizer complement(const CommutativeRecognizer& r) {
  std::vector<bool> flipped(r.size());
  for (std::size_t e = 0; e < r.size(); ++e) flipped[e] = !r.accepts(static_cast<CommutativeRecognizer::Element>(e));
  return r.with_accepting(std::move(flipped));
}

CommutativeRecognizer avoiding_letters(std::size_t alphabet_size, const std::vector<std::uint32_t>& letters) {
  if (letters.empty()) return compile_constraint(CountConstraint::always(), alphabet_size);
  return compile_constraint(CountConstraint::exactly(letters, 0), alphabet_size);
}

CommutativeRecognizer exactly_one_of(std::size_t alphabet_size, const std::vector<std::uint32_t>& letters) {
  if (letters.empty()) return compile_constraint(!CountConstraint::always(), alphabet_size);
  return compile_constraint(CountConstraint::exactly(letters, 1), alphabet_size);
}

// ------------------------------------------------------------ restriction

std::vector<Polynomial> restrict_config_all(const Polynomial& cfg, const CommutativeRecognizer& r) {
  const std::size_t size = r.size();
  std::vector<Polynomial> result(size);
  for (const auto& [monomial, c] : cfg.terms()) {
    // dp[x]: sum over factorizations of the prefix product into x
    std::vector<Polynomial> dp(size);
    dp[r.identity()] = Polynomial(c);
    for (const auto& [v, e] : monomial.factors()) {
      for (unsigned rep = 0; rep < e; ++rep) {
        std::vector<Polynomial> next(size);
        for (CommutativeRecognizer::Element x = 0; x < size; ++x) {
          if (dp[x].is_zero()) continue;
          for (CommutativeRecognizer::Element y = 0; y < size; ++y) {
            next[r.multiply(x, y)] += dp[x] * Polynomial::variable(restricted_var(v, y, size));
          }
        }
        dp = std::move(next);
      }
    }
    for (std::size_t m = 0; m < size; ++m) result[m] += dp[m];
  }
  return result;
}

Polynomial restrict_config(const Polynomial& cfg, CommutativeRecognizer::Element m, const CommutativeRecognizer& r) {
  if (m >= r.size()) throw ValidationError("monoid element out of range");
  return restrict_config_all(cfg, r)[m];
}

ShuffleAutomaton restrict_automaton(const ShuffleAutomaton& a, const CommutativeRecognizer& r) {
  if (a.alphabet_size() != r.alphabet_size()) throw ValidationError("automaton and recognizer alphabets differ");
  const std::size_t size = r.size();
  const std::size_t k = a.size();

  std::vector<std::string> names;
  std::vector<Rational> output;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t m = 0; m < size; ++m) {
      names.push_back(a.nonterminals()[i] + "__m" + std::to_string(m));
      output.push_back(m == r.identity() ? a.output()[i] : Rational(0));
    }
  }

  std::vector<std::vector<Polynomial>> delta(a.alphabet_size(), std::vector<Polynomial>(k * size));
  for (std::uint32_t letter = 0; letter < a.alphabet_size(); ++letter) {
    const auto h = r.image(Letter{letter});
    for (std::size_t i = 0; i < k; ++i) {
      const auto pieces = restrict_config_all(a.transitions()[letter][i], r);
      for (CommutativeRecognizer::Element mp = 0; mp < size; ++mp) {
        const auto m = r.multiply(h, mp);
        delta[letter][restricted_var(static_cast<Var>(i), m, size)] += pieces[mp];
      }
    }
  }

  Polynomial init;
  const auto pieces = restrict_config_all(a.initial(), r);
  for (std::size_t m = 0; m < size; ++m) {
    if (r.accepts(static_cast<CommutativeRecognizer::Element>(m))) init += pieces[m];
  }
  return ShuffleAutomaton(a.alphabet_size(), std::move(names), std::move(init), std::move(output), std::move(delta));
}

}  // namespace fliess
