#pragma once

#include <map>
#include <set>
#include <string>

#include "fliess/automaton.hpp"
#include "fliess/commlang.hpp"
#include "fliess/rational.hpp"
#include "fliess/word.hpp"

namespace fliess {

/// Finite prefix of a series: coefficients of all words of length <= depth.
/// Only nonzero coefficients are stored; absent words have coefficient 0.
class TruncatedSeries {
 public:
  using Table = std::map<Word, Rational, ShortLex>;

  TruncatedSeries(std::size_t alphabet_size, std::size_t depth) : alphabet_size_(alphabet_size), depth_(depth) {}

  std::size_t alphabet_size() const { return alphabet_size_; }
  std::size_t depth() const { return depth_; }
  const Table& table() const { return table_; }

  /// Coefficient of w; throws ValidationError if |w| exceeds the depth.
  Rational at(const Word& w) const;
  /// Sets the coefficient of w (zero erases). Throws on |w| > depth or bad letters.
  void set(const Word& w, const Rational& value);

  bool is_zero() const { return table_.empty(); }
  /// Same series cut to a smaller depth.
  TruncatedSeries truncated(std::size_t depth) const;

  friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) = default;

 private:
  std::size_t alphabet_size_;
  std::size_t depth_;
  Table table_;
};

/// Table of coeff(A, w) for all |w| <= depth. Configurations are memoized,
/// so words reaching equal configurations share work.
TruncatedSeries truncate(const ShuffleAutomaton& a, std::size_t depth);

TruncatedSeries operator+(const TruncatedSeries& f, const TruncatedSeries& g);
TruncatedSeries operator*(const Rational& c, const TruncatedSeries& f);

/// Shuffle product on the common depth, computed with the coinductive rule
/// (f sh g)(eps) = f(eps) g(eps), d_a(f sh g) = d_a f sh g + f sh d_a g.
TruncatedSeries shuffle_trunc(const TruncatedSeries& f, const TruncatedSeries& g);

enum class Side { Left, Right };

/// Left (f(a w)) or right (f(w a)) quotient; result depth is depth - 1.
TruncatedSeries trunc_derivative(const TruncatedSeries& f, Side side, Letter a);

/// Support restriction of the table to the recognised language.
TruncatedSeries restrict_trunc(const TruncatedSeries& f, const CommutativeRecognizer& r);

/// Brute-force referees: each property is evaluated on every word up to
/// the table's depth.
bool naive_zero(const TruncatedSeries& f);
bool naive_equal(const TruncatedSeries& f, const TruncatedSeries& g);
bool naive_support_subset(const TruncatedSeries& f, const CommutativeRecognizer& r);
/// Coefficients agree across every adjacent transposition that moves a
/// letter of gamma, which generates the "permute the gamma letters" relation.
bool naive_commutative_in(const TruncatedSeries& f, const std::set<std::uint32_t>& gamma);
/// The right quotient by a0 vanishes on the table.
bool naive_stationary(const TruncatedSeries& f);

/// Dump format: one `word<TAB>rational` line per nonzero coefficient,
/// shortlex order, the empty word written `eps`.
std::string dump(const TruncatedSeries& f);

}  // namespace fliess
