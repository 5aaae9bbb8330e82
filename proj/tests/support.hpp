#pragma once

// Seeded generators for property tests.

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "fliess/automaton.hpp"
#include "fliess/commlang.hpp"
#include "fliess/polynomial.hpp"
#include "fliess/system.hpp"
#include "fliess/word.hpp"

namespace fliess::testing {

inline Polynomial poly(std::string_view text, const std::vector<std::string>& names) {
  return parse_polynomial(text, names);
}

inline Rational q(std::string_view text) { return parse_rational(text); }

inline Word word(std::string_view text) { return parse_word(text); }

/// One nonterminal X with init X, output 1 and delta_a X = X on every letter:
/// the series with all coefficients 1.
inline ShuffleAutomaton exp_automaton(std::size_t alphabet_size = 1) {
  std::vector<std::vector<Polynomial>> delta(alphabet_size, {Polynomial::variable(0)});
  return ShuffleAutomaton(alphabet_size, {"X"}, Polynomial::variable(0), {Rational(1)}, delta);
}

/// delta_a0 X = X^2, output 1, init X: coefficient of a0^n is n!.
inline ShuffleAutomaton factorial_automaton() {
  const Polynomial x = Polynomial::variable(0);
  return ShuffleAutomaton(1, {"X"}, x, {Rational(1)}, {{x * x}});
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen_); }
  bool chance(double p) { return std::bernoulli_distribution(p)(gen_); }

  /// Nonzero n/d with |n| <= num_max, d in 1..den_max.
  Rational nonzero_rational(int num_max = 3, int den_max = 2) {
    int n = 0;
    while (n == 0) n = uniform(-num_max, num_max);
    Rational r(n, uniform(1, den_max));
    r.canonicalize();
    return r;
  }

  template <class T>
  const T& pick(const std::vector<T>& v) {
    return v[static_cast<std::size_t>(uniform(0, static_cast<int>(v.size()) - 1))];
  }

 private:
  std::mt19937_64 gen_;
};

struct PolyShape {
  unsigned max_degree = 2;
  int max_terms = 3;
  int num_max = 3;
  int den_max = 2;
  double zero_chance = 0.0;
};

inline Monomial random_monomial(Rng& rng, std::size_t vars, unsigned degree) {
  Monomial m;
  for (unsigned d = 0; d < degree && vars > 0; ++d) {
    m = m * Monomial::variable(static_cast<Var>(rng.uniform(0, static_cast<int>(vars) - 1)));
  }
  return m;
}

inline Polynomial random_polynomial(Rng& rng, std::size_t vars, const PolyShape& shape = {}) {
  Polynomial p;
  if (rng.chance(shape.zero_chance)) return p;
  const int terms = rng.uniform(1, shape.max_terms);
  for (int t = 0; t < terms; ++t) {
    const auto degree = static_cast<unsigned>(rng.uniform(0, static_cast<int>(shape.max_degree)));
    p += Polynomial::term(rng.nonzero_rational(shape.num_max, shape.den_max), random_monomial(rng, vars, degree));
  }
  return p;
}

struct AutomatonShape {
  std::size_t alphabet = 2;
  std::size_t max_nonterminals = 3;
  PolyShape transitions{2, 2, 3, 2, 0.35};
  PolyShape initial{2, 2, 3, 2, 0.0};
  double zero_output_chance = 0.3;
};

inline ShuffleAutomaton random_automaton(Rng& rng, const AutomatonShape& shape = {}) {
  const auto k = static_cast<std::size_t>(rng.uniform(1, static_cast<int>(shape.max_nonterminals)));
  std::vector<std::string> names;
  for (std::size_t i = 0; i < k; ++i) names.push_back("X" + std::to_string(i));
  std::vector<Rational> output;
  for (std::size_t i = 0; i < k; ++i) {
    output.push_back(rng.chance(shape.zero_output_chance) ? Rational(0) : rng.nonzero_rational(2, 2));
  }
  std::vector<std::vector<Polynomial>> delta(shape.alphabet);
  for (auto& row : delta) {
    for (std::size_t i = 0; i < k; ++i) row.push_back(random_polynomial(rng, k, shape.transitions));
  }
  return ShuffleAutomaton(shape.alphabet, names, random_polynomial(rng, k, shape.initial), output, delta);
}

struct SystemShape {
  std::size_t max_states = 3;
  std::size_t max_inputs = 2;
  PolyShape dynamics{2, 2, 3, 1, 0.3};
  PolyShape output{2, 2, 3, 1, 0.0};
};

inline PolynomialSystem random_system(Rng& rng, const SystemShape& shape = {}) {
  PolynomialSystem s;
  const auto k = static_cast<std::size_t>(rng.uniform(1, static_cast<int>(shape.max_states)));
  s.inputs = static_cast<std::size_t>(rng.uniform(0, static_cast<int>(shape.max_inputs)));
  for (std::size_t i = 0; i < k; ++i) {
    s.states.push_back("x" + std::to_string(i + 1));
    s.initial_state.push_back(rng.chance(0.25) ? Rational(0) : rng.nonzero_rational(3, 1));
  }
  s.dynamics.assign(s.inputs + 1, {});
  for (auto& p : s.dynamics) {
    for (std::size_t i = 0; i < k; ++i) p.push_back(random_polynomial(rng, k, shape.dynamics));
  }
  s.output = random_polynomial(rng, k, shape.output);
  return s;
}

/// System linear in the inputs `linear` (1-based): free states x_1..x_p never
/// see those inputs, the last state z starts at 0, is forced by them and
/// otherwise evolves linearly, and the output is linear in z.
inline PolynomialSystem random_linear_system(Rng& rng, std::size_t inputs, const std::vector<std::uint32_t>& linear,
                                             std::size_t free_states = 1) {
  const PolyShape shape{1, 2, 3, 1, 0.3};
  const auto p = free_states;
  const Polynomial z = Polynomial::variable(static_cast<Var>(p));
  auto in_j = [&](std::size_t j) { return std::find(linear.begin(), linear.end(), j) != linear.end(); };
  PolynomialSystem s;
  s.inputs = inputs;
  for (std::size_t i = 0; i < p; ++i) {
    s.states.push_back("x" + std::to_string(i + 1));
    s.initial_state.push_back(rng.chance(0.25) ? Rational(0) : rng.nonzero_rational(3, 1));
  }
  s.states.push_back("z");
  s.initial_state.emplace_back(0);
  s.dynamics.assign(inputs + 1, std::vector<Polynomial>(p + 1));
  for (std::size_t j = 0; j <= inputs; ++j) {
    for (std::size_t i = 0; i < p; ++i) {
      if (!in_j(j)) s.dynamics[j][i] = random_polynomial(rng, p, shape);
    }
    s.dynamics[j][p] = in_j(j) ? random_polynomial(rng, p, shape) : random_polynomial(rng, p, shape) * z;
  }
  s.output = random_polynomial(rng, p, PolyShape{1, 2, 3, 1, 0.0}) * z;
  return s;
}

/// Counting constraint with thresholds <= max_threshold and moduli in 2..max_modulus.
inline CountConstraint random_constraint(Rng& rng, std::size_t alphabet, int max_threshold = 2, int max_modulus = 3,
                                         int depth = 2) {
  if (depth == 0 || rng.chance(0.35)) {
    std::vector<std::uint32_t> group{static_cast<std::uint32_t>(rng.uniform(0, static_cast<int>(alphabet) - 1))};
    const auto n = static_cast<unsigned>(rng.uniform(0, max_threshold));
    switch (rng.uniform(0, 3)) {
      case 0: return CountConstraint::at_least(group, n);
      case 1: return CountConstraint::at_most(group, n);
      case 2: return CountConstraint::exactly(group, n);
      default: {
        const auto k = static_cast<unsigned>(rng.uniform(2, max_modulus));
        return CountConstraint::modulo(group, k, static_cast<unsigned>(rng.uniform(0, static_cast<int>(k) - 1)));
      }
    }
  }
  const CountConstraint a = random_constraint(rng, alphabet, max_threshold, max_modulus, depth - 1);
  switch (rng.uniform(0, 2)) {
    case 0: return a && random_constraint(rng, alphabet, max_threshold, max_modulus, depth - 1);
    case 1: return a || random_constraint(rng, alphabet, max_threshold, max_modulus, depth - 1);
    default: return !a;
  }
}

/// Random polynomial input: coefficients of a polynomial of degree <= 3 in
/// exponential convention, zero-padded to `order`.
inline PowerSeries random_input(Rng& rng, std::size_t order) {
  PowerSeries u(order);
  const int degree = rng.uniform(0, 3);
  for (int n = 0; n <= degree && static_cast<std::size_t>(n) <= order; ++n) {
    u[static_cast<std::size_t>(n)] = rng.chance(0.2) ? Rational(0) : rng.nonzero_rational(3, 2);
  }
  return u;
}

inline std::vector<PowerSeries> random_inputs(Rng& rng, std::size_t m, std::size_t order) {
  std::vector<PowerSeries> u;
  for (std::size_t j = 0; j < m; ++j) u.push_back(random_input(rng, order));
  return u;
}

}  // namespace fliess::testing
