#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "fliess/automaton.hpp"
#include "fliess/polynomial.hpp"
#include "fliess/rational.hpp"
#include "fliess/word.hpp"

namespace fliess {

/// Polynomial control system with affine inputs:
///   x' = p_0(x) + sum_{j=1..m} u_j p_j(x),  y = q(x),  x(0) = x0.
/// State variable i is polynomial variable i.
struct PolynomialSystem {
  std::size_t inputs = 0;                         // m
  std::vector<std::string> states;                // k names
  std::vector<Rational> initial_state;            // x0, size k
  std::vector<std::vector<Polynomial>> dynamics;  // [j][i] = component i of p_j, j = 0..m
  Polynomial output;                              // q

  std::size_t dimension() const { return states.size(); }
  /// Throws ValidationError if sizes disagree or a polynomial leaves x_1..x_k.
  void validate() const;

  friend bool operator==(const PolynomialSystem&, const PolynomialSystem&) = default;
};

/// Accepts the block format
///   system { inputs: 1; states: x1 = 1; dynamics { x1' = u1 * x1; } output: x1; }
/// and the compact statement form `x1' = u1 * x1; y = x1; x1(0) = 1`.
/// Right-hand sides may use states and u1..um; each expanded monomial may
/// contain at most one input variable, to the first power. Throws ParseError
/// (syntax) or ValidationError (naming the offending monomial).
PolynomialSystem parse_system(std::string_view text);
std::string print_system(const PolynomialSystem& s);

/// Automaton with one nonterminal per state: init q, outputs x0,
/// transitions delta_{a_j}(X_i) = p_j,i.
ShuffleAutomaton system_to_automaton(const PolynomialSystem& s);
/// Inverse construction: x0 = outputs, p_j = transitions of a_j, q = init.
PolynomialSystem automaton_to_system(const ShuffleAutomaton& a);

/// Univariate power series in exponential convention, truncated at `order`:
/// value = sum_n c_n t^n / n!. Integration and differentiation are shifts.
class PowerSeries {
 public:
  explicit PowerSeries(std::size_t order) : coefficients_(order + 1, Rational(0)) {}
  explicit PowerSeries(std::vector<Rational> coefficients);
  static PowerSeries constant(const Rational& c, std::size_t order);

  std::size_t order() const { return coefficients_.size() - 1; }
  const std::vector<Rational>& coefficients() const { return coefficients_; }
  const Rational& operator[](std::size_t n) const { return coefficients_.at(n); }
  Rational& operator[](std::size_t n) { return coefficients_.at(n); }

  /// Keeps slots 0..order, zero-padding when growing.
  PowerSeries truncated(std::size_t order) const;
  PowerSeries integral() const;
  /// Formal derivative, order drops by one (order 0 gives the zero series of order 0).
  PowerSeries derivative() const;

  friend PowerSeries operator+(const PowerSeries& a, const PowerSeries& b);
  friend PowerSeries operator-(const PowerSeries& a, const PowerSeries& b);
  /// Product in exponential convention: (uv)_n = sum_i C(n,i) u_i v_{n-i}.
  friend PowerSeries operator*(const PowerSeries& a, const PowerSeries& b);
  friend PowerSeries operator*(const PowerSeries& a, const Rational& c);
  friend PowerSeries operator*(const Rational& c, const PowerSeries& a) { return a * c; }
  friend bool operator==(const PowerSeries&, const PowerSeries&) = default;

  std::string to_string() const;

 private:
  std::vector<Rational> coefficients_;
};

/// Parses `[1,0,2]` (rationals allowed) into a series zero-padded to `order`.
/// Throws ValidationError if more coefficients than order + 1 are given.
PowerSeries parse_power_series(std::string_view text, std::size_t order);

/// Output of the system for the inputs u_1..u_m, to the given order,
/// by Picard iteration x <- x0 + int(sum_j u_j p_j(x)) with u_0 = 1.
/// Inputs must have order >= `order`.
PowerSeries simulate(const PolynomialSystem& s, const std::vector<PowerSeries>& inputs, std::size_t order);

/// Formal iterated integral F_w(u): F_eps = 1, F_{a_j w} = int(u_j F_w).
PowerSeries iterated_integral(const Word& w, const std::vector<PowerSeries>& inputs, std::size_t order);

/// sum over |w| <= order of coeff(A, w) F_w(u); exact to `order` because F_w has order >= |w|.
PowerSeries fliess_eval(const ShuffleAutomaton& a, const std::vector<PowerSeries>& inputs, std::size_t order);

}  // namespace fliess
