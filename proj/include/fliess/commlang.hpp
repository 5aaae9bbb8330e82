#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "fliess/automaton.hpp"
#include "fliess/polynomial.hpp"
#include "fliess/word.hpp"

namespace fliess {

/// Boolean combination of counting atoms over letter groups. An atom looks
/// at the number of occurrences of letters from a group (usually a single
/// letter) and compares it with a threshold or a residue class.
class CountConstraint {
 public:
  enum class Relation { AtLeast, AtMost, Exactly, Modulo };

  struct Atom {
    std::vector<std::uint32_t> group;  // sorted, distinct letter indices
    Relation relation = Relation::AtLeast;
    unsigned value = 0;    // threshold, or residue for Modulo
    unsigned modulus = 1;  // Modulo only, >= 1
  };

  struct Node;

  /// count(group) >= n etc. Throws ValidationError on malformed atoms.
  static CountConstraint at_least(std::vector<std::uint32_t> group, unsigned n);
  static CountConstraint at_most(std::vector<std::uint32_t> group, unsigned n);
  static CountConstraint exactly(std::vector<std::uint32_t> group, unsigned n);
  static CountConstraint modulo(std::vector<std::uint32_t> group, unsigned modulus, unsigned residue);
  static CountConstraint always();

  friend CountConstraint operator&&(const CountConstraint& a, const CountConstraint& b);
  friend CountConstraint operator||(const CountConstraint& a, const CountConstraint& b);
  friend CountConstraint operator!(const CountConstraint& a);

  /// Evaluates the constraint on per-letter occurrence counts
  /// (counts[j] = occurrences of a_j; missing entries count as 0).
  bool evaluate(const std::vector<unsigned>& counts) const;
  bool evaluate(const Word& w) const;

  /// Every atom, in left-to-right order.
  std::vector<Atom> atoms() const;
  /// Largest letter index mentioned, if any.
  std::optional<std::uint32_t> max_letter() const;

  std::string to_string() const;

  const std::shared_ptr<const Node>& root() const { return root_; }

 private:
  explicit CountConstraint(std::shared_ptr<const Node> root) : root_(std::move(root)) {}
  std::shared_ptr<const Node> root_;
};

/// Syntax: `count(a1) == 0`, `count(a0) >= 2`, `count(a2) % 3 == 1`,
/// `count(a1, a2) <= 1` (total over a group), `>`, `<`, `!=`, combined
/// with `&&`, `||`, `!` and parentheses; `true` / `false` are accepted.
/// Letters must be below `alphabet_size`. Throws ParseError.
CountConstraint parse_constraint(std::string_view text, std::size_t alphabet_size);

/// Finite commutative monoid M with a letter homomorphism h and accepting
/// set F, recognising h^{-1}(F). Elements are 0..size-1.
class CommutativeRecognizer {
 public:
  using Element = std::uint32_t;

  /// `table[x * size + y]` is x*y. Validates identity, associativity and
  /// commutativity exhaustively; throws ValidationError on failure.
  CommutativeRecognizer(std::size_t alphabet_size, std::size_t size, std::vector<Element> table, Element identity,
                        std::vector<Element> hom, std::vector<bool> accepting);

  std::size_t alphabet_size() const { return alphabet_size_; }
  std::size_t size() const { return size_; }
  Element identity() const { return identity_; }
  Element multiply(Element x, Element y) const { return table_[x * size_ + y]; }
  Element image(Letter a) const;
  Element image(const Word& w) const;
  bool accepts(Element m) const { return accepting_[m]; }
  const std::vector<bool>& accepting() const { return accepting_; }
  bool member(const Word& w) const { return accepts(image(w)); }

  /// Same monoid and homomorphism with a different accepting set.
  CommutativeRecognizer with_accepting(std::vector<bool> accepting) const;

  /// Optional human-readable labels for elements (diagnostics and names).
  const std::vector<std::string>& labels() const { return labels_; }
  void set_labels(std::vector<std::string> labels);

 private:
  std::size_t alphabet_size_;
  std::size_t size_;
  std::vector<Element> table_;
  Element identity_;
  std::vector<Element> hom_;
  std::vector<bool> accepting_;
  std::vector<std::string> labels_;
};

/// Product of, per distinct letter group, a saturating counter {0..T} and a
/// cyclic counter Z_p, with T and p the smallest values that still decide
/// every atom on that group. The accepting set is computed by evaluating
/// the constraint on each element.
CommutativeRecognizer compile_constraint(const CountConstraint& c, std::size_t alphabet_size);

bool member(const CommutativeRecognizer& r, const Word& w);
CommutativeRecognizer complement(const CommutativeRecognizer& r);

/// Words avoiding every letter a_j, j in J.
CommutativeRecognizer avoiding_letters(std::size_t alphabet_size, const std::vector<std::uint32_t>& letters);
/// Words with exactly one occurrence of letters from J in total.
CommutativeRecognizer exactly_one_of(std::size_t alphabet_size, const std::vector<std::uint32_t>& letters);

/// Indexed nonterminal X_i^m as a variable id of the restricted automaton.
inline Var restricted_var(Var base, CommutativeRecognizer::Element m, std::size_t monoid_size) {
  return static_cast<Var>(base * monoid_size + m);
}

/// Restriction of a configuration's series to h^{-1}(m), as a polynomial in
/// the indexed nonterminals: each monomial of degree d expands into the sum
/// over factorizations m = m_1 ... m_d of the indexed products.
Polynomial restrict_config(const Polynomial& cfg, CommutativeRecognizer::Element m, const CommutativeRecognizer& r);

/// restrict_config for every monoid element at once (index = element).
std::vector<Polynomial> restrict_config_all(const Polynomial& cfg, const CommutativeRecognizer& r);

/// Automaton recognising the series restricted to the recognised language.
ShuffleAutomaton restrict_automaton(const ShuffleAutomaton& a, const CommutativeRecognizer& r);

}  // namespace fliess
