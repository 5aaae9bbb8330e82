#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string_view>
#include <string>
#include <utility>
#include <vector>

#include "fliess/error.hpp"
#include "fliess/rational.hpp"

namespace fliess {

/// Indeterminate id. Ids are positions in the owner's declared variable list;
/// the monomial order treats lower ids as larger variables.
using Var = std::uint32_t;

/// Power product of indeterminates, stored sparsely as (var, exponent) pairs
/// sorted by var. Zero exponents are never stored; the empty product is 1.
class Monomial {
 public:
  using Factor = std::pair<Var, unsigned>;

  Monomial() = default;
  static Monomial variable(Var v, unsigned exponent = 1);
  /// Takes arbitrary factors; merges duplicates and drops zero exponents.
  static Monomial from_factors(std::vector<Factor> factors);

  const std::vector<Factor>& factors() const { return factors_; }
  unsigned degree() const { return degree_; }
  unsigned exponent(Var v) const;
  bool is_one() const { return factors_.empty(); }
  std::optional<Var> max_variable() const;

  bool divides(const Monomial& other) const;
  bool coprime(const Monomial& other) const;
  /// Exact quotient; requires divisor.divides(*this).
  Monomial quotient(const Monomial& divisor) const;
  Monomial lcm(const Monomial& other) const;
  /// Removes one power of v; requires exponent(v) > 0.
  Monomial without_one(Var v) const;

  template <class F>
  Monomial renamed(F&& map) const {
    std::vector<Factor> out;
    out.reserve(factors_.size());
    for (const auto& [v, e] : factors_) out.emplace_back(map(v), e);
    return from_factors(std::move(out));
  }

  friend Monomial operator*(const Monomial& a, const Monomial& b);
  friend bool operator==(const Monomial& a, const Monomial& b) = default;

 private:
  std::vector<Factor> factors_;
  unsigned degree_ = 0;
};

/// Graded reverse lexicographic order; `operator()(a, b)` is true iff a > b.
struct GrevlexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

/// Three-way grevlex comparison: negative, zero or positive.
int grevlex_compare(const Monomial& a, const Monomial& b);

/// Sparse multivariate polynomial with exact rational coefficients.
/// Terms are kept in descending grevlex order with no zero coefficients,
/// so the first term is the leading term.
class Polynomial {
 public:
  using Terms = std::map<Monomial, Rational, GrevlexGreater>;

  Polynomial() = default;
  Polynomial(const Rational& constant);  // NOLINT(google-explicit-constructor)
  Polynomial(long constant) : Polynomial(Rational(constant)) {}  // NOLINT
  Polynomial(int constant) : Polynomial(Rational(constant)) {}   // NOLINT
  static Polynomial variable(Var v);
  static Polynomial term(const Rational& coefficient, Monomial monomial);

  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_term() const;
  Rational coefficient(const Monomial& m) const;

  /// Leading monomial / coefficient; the polynomial must be nonzero.
  const Monomial& leading_monomial() const;
  const Rational& leading_coefficient() const;
  unsigned total_degree() const;
  std::vector<Var> variables() const;
  std::optional<Var> max_variable() const;

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(const Polynomial& other);
  Polynomial& operator*=(const Rational& scalar);
  /// this += coefficient * monomial * other, the core of reduction.
  void add_scaled(const Rational& coefficient, const Monomial& monomial, const Polynomial& other);
  /// Removes and returns the leading term; the polynomial must be nonzero.
  std::pair<Monomial, Rational> pop_leading_term();
  /// Adds a single term c*m.
  void add_term(const Monomial& m, const Rational& c);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }
  friend Polynomial operator-(Polynomial a);
  friend bool operator==(const Polynomial& a, const Polynomial& b);

  Polynomial pow(unsigned exponent) const;
  Polynomial partial(Var v) const;
  /// Divides by the leading coefficient. Zero stays zero.
  Polynomial monic() const;

  /// Exact evaluation; point[v] is the value of variable v.
  /// Throws ValidationError if some variable has no value.
  Rational evaluate(std::span<const Rational> point) const;
  Rational evaluate(const std::map<Var, Rational>& point) const;

  /// Evaluation in any commutative ring T that supports T + T, T * T and
  /// T * Rational. `one` is the unit of T.
  template <class T>
  T evaluate_in(std::span<const T> point, const T& one) const;

  template <class F>
  Polynomial renamed(F&& map) const {
    Polynomial out;
    for (const auto& [m, c] : terms_) out.add_term(m.renamed(map), c);
    return out;
  }

  /// Rendering with the given variable names, e.g. `3/2*x1^2*x2 - x2 + 1`.
  std::string to_string(std::span<const std::string> names) const;

 private:
  Terms terms_;
};

/// Total order on polynomials so they can key ordered containers.
struct PolynomialLess {
  bool operator()(const Polynomial& a, const Polynomial& b) const;
};

/// Formal partial derivative by variable name; throws ValidationError
/// if the name is not in `names`.
Polynomial partial(const Polynomial& p, std::string_view name, std::span<const std::string> names);

/// Parses the polynomial text syntax (`3/2*x1^2*x2 - x2 + 1`) over a fixed
/// list of names. Unknown names raise ParseError with line/column.
Polynomial parse_polynomial(std::string_view text, std::span<const std::string> names);

/// Same, but appends unseen names to `names` instead of rejecting them.
Polynomial parse_polynomial_extending(std::string_view text, std::vector<std::string>& names);

template <class T>
T Polynomial::evaluate_in(std::span<const T> point, const T& one) const {
  T total = one * Rational(0);
  std::map<std::pair<Var, unsigned>, T> powers;
  for (const auto& [m, c] : terms_) {
    T product = one;
    for (const auto& [v, e] : m.factors()) {
      if (v >= point.size()) throw ValidationError("no value for variable " + std::to_string(v));
      auto it = powers.find({v, e});
      if (it == powers.end()) {
        T power = one;
        for (unsigned i = 0; i < e; ++i) power = power * point[v];
        it = powers.emplace(std::make_pair(v, e), std::move(power)).first;
      }
      product = product * it->second;
    }
    total = total + product * c;
  }
  return total;
}

}  // namespace fliess
