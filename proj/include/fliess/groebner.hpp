#pragma once

#include <span>
#include <vector>

#include "fliess/polynomial.hpp"

namespace fliess {

/// Reduced Groebner basis under grevlex. Generators are monic, mutually
/// reduced and sorted by descending leading monomial. The empty basis
/// is the zero ideal; the basis {1} is the unit ideal.
class GroebnerBasis {
 public:
  GroebnerBasis() = default;

  const std::vector<Polynomial>& generators() const { return generators_; }
  bool is_zero_ideal() const { return generators_.empty(); }
  bool is_unit_ideal() const;

  /// Unique remainder of p modulo the ideal.
  Polynomial normal_form(const Polynomial& p) const;
  bool contains(const Polynomial& p) const;

  /// Basis of the ideal generated by this one together with `more`.
  /// Only S-pairs involving new elements are formed.
  GroebnerBasis extended(std::span<const Polynomial> more) const;

  friend bool operator==(const GroebnerBasis& a, const GroebnerBasis& b) = default;

 private:
  friend GroebnerBasis buchberger(std::span<const Polynomial> gens);
  std::vector<Polynomial> generators_;
};

/// Buchberger's algorithm with the coprime and chain criteria and the
/// sugar selection strategy.
GroebnerBasis buchberger(std::span<const Polynomial> gens);

/// Full reduction of p by the divisors (any set, not necessarily a basis).
Polynomial reduce(const Polynomial& p, std::span<const Polynomial> divisors);

/// S-polynomial of two nonzero polynomials.
Polynomial s_polynomial(const Polynomial& f, const Polynomial& g);

}  // namespace fliess
