#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "fliess/polynomial.hpp"
#include "fliess/rational.hpp"
#include "fliess/word.hpp"

namespace fliess {

/// Shuffle automaton (a.k.a. weighted basic parallel process).
///
/// Configurations are polynomials over the nonterminals X_0..X_{k-1}
/// (variable id i is nonterminal i). Each letter a acts on configurations
/// through the unique derivation extending its transitions X_i -> delta_a(X_i),
/// and the coefficient of a word w in the recognised series is the
/// configuration reached by reading w from the initial configuration,
/// evaluated at the output values.
///
/// Values are immutable; every construction returns a new automaton.
class ShuffleAutomaton {
 public:
  /// `delta[a][i]` is the transition polynomial of nonterminal i on letter a.
  /// Throws ValidationError if dimensions disagree or a polynomial mentions
  /// a variable outside 0..k-1.
  ShuffleAutomaton(std::size_t alphabet_size, std::vector<std::string> nonterminals, Polynomial initial,
                   std::vector<Rational> output, std::vector<std::vector<Polynomial>> delta);

  std::size_t alphabet_size() const { return alphabet_size_; }
  std::size_t size() const { return nonterminals_.size(); }
  const std::vector<std::string>& nonterminals() const { return nonterminals_; }
  const Polynomial& initial() const { return initial_; }
  const std::vector<Rational>& output() const { return output_; }
  const Polynomial& transition(Letter a, Var x) const;
  const std::vector<std::vector<Polynomial>>& transitions() const { return delta_; }

  ShuffleAutomaton with_initial(Polynomial initial) const;

 private:
  std::size_t alphabet_size_;
  std::vector<std::string> nonterminals_;
  Polynomial initial_;
  std::vector<Rational> output_;
  std::vector<std::vector<Polynomial>> delta_;
};

/// Applies the derivation of letter a: sum_i d(cfg)/dX_i * delta_a(X_i).
Polynomial derive_config(const ShuffleAutomaton& a, Letter letter, const Polynomial& cfg);

/// Iterated derivation along w, letters applied left to right.
Polynomial derive_config(const ShuffleAutomaton& a, const Word& w, const Polynomial& cfg);

/// Coefficient of w in the series recognised by the automaton.
Rational coeff(const ShuffleAutomaton& a, const Word& w);

/// Series of a configuration evaluated at w (the automaton supplies the transitions and outputs).
Rational coeff(const ShuffleAutomaton& a, const Polynomial& cfg, const Word& w);

ShuffleAutomaton scale(const Rational& c, const ShuffleAutomaton& a);
ShuffleAutomaton sum(const ShuffleAutomaton& a, const ShuffleAutomaton& b);
ShuffleAutomaton shuffle(const ShuffleAutomaton& a, const ShuffleAutomaton& b);
ShuffleAutomaton left_derivative(const ShuffleAutomaton& a, Letter letter);

/// Right derivative: adds one nonterminal Y_i per X_i standing for the right
/// quotient of X_i's series by the letter. Y_i moves linearly in the Y's,
/// Delta_b(Y_i) = sum_j d(Delta_b X_i)/dX_j * Y_j, and its output is the
/// coefficient of the letter in X_i's series.
ShuffleAutomaton right_derivative(const ShuffleAutomaton& a, Letter letter);

/// Same series over a larger alphabet; the new letters have zero transitions.
ShuffleAutomaton widen_alphabet(const ShuffleAutomaton& a, std::size_t alphabet_size);

/// Chain automaton recognising c * w.
ShuffleAutomaton word_automaton(std::size_t alphabet_size, const Word& w, const Rational& c = Rational(1));

/// Automaton with no nonterminals recognising c * eps (the zero series for c = 0).
ShuffleAutomaton constant_automaton(std::size_t alphabet_size, const Rational& c);
ShuffleAutomaton zero_automaton(std::size_t alphabet_size);

/// Same series with fewer nonterminals: merges nonterminals that have equal
/// outputs and equal transitions once merged (the coarsest such partition),
/// replaces nonterminals with zero transitions by their output value, and
/// drops nonterminals unreachable from the initial configuration. Renaming
/// to class representatives commutes with every derivation and with
/// evaluation at the outputs, so every coefficient is preserved.
ShuffleAutomaton simplify(const ShuffleAutomaton& a);

/// Result of placing two automata side by side: nonterminals of `left`
/// keep their ids, those of `right` are shifted by `offset`.
struct DisjointUnion {
  ShuffleAutomaton automaton;
  Var offset;
};

/// Side-by-side union over the larger alphabet, with initial configuration
/// left.initial (callers replace it). Clashing names get fresh suffixes.
DisjointUnion disjoint_union(const ShuffleAutomaton& left, const ShuffleAutomaton& right);

/// Returns `base` if unused, else `base_2`, `base_3`, ... .
std::string fresh_name(const std::string& base, const std::vector<std::string>& taken);

/// Text format:
///   automaton { alphabet: 2; nonterminals: X, Y; init: X^2 + Y;
///     output: X = 1, Y = 0; delta a0: X -> 0, Y -> X*Y; delta a1: X -> Y, Y -> 1; }
/// Omitted delta and output entries are 0. Throws ParseError.
ShuffleAutomaton parse_automaton(std::string_view text);
std::string print_automaton(const ShuffleAutomaton& a);

}  // namespace fliess
