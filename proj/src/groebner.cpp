#include "fliess/groebner.hpp"

#include <algorithm>
#include <set>
#include <utility>

namespace fliess {

namespace {

const Polynomial* find_divisor(const Monomial& m, std::span<const Polynomial> divisors) {
  for (const auto& d : divisors) {
    if (d.leading_monomial().divides(m)) return &d;
  }
  return nullptr;
}

struct CriticalPair {
  std::size_t i;
  std::size_t j;
  Monomial lcm;
  unsigned sugar;
};

/// Completes `basis` to a Groebner basis. Elements before `first_new` are
/// assumed to already form a basis, so only pairs touching later elements
/// are considered. Returns the (non-reduced) completed list.
std::vector<Polynomial> complete(std::vector<Polynomial> basis, std::size_t first_new) {
  std::vector<CriticalPair> pending;
  std::set<std::pair<std::size_t, std::size_t>> pending_keys;
  // sugar degrees: the degree a polynomial would have if no cancellation had
  // happened while computing it
  std::vector<unsigned> sugar;
  for (const auto& b : basis) sugar.push_back(b.total_degree());
  auto add_pairs_for = [&](std::size_t j) {
    for (std::size_t i = 0; i < j; ++i) {
      Monomial l = basis[i].leading_monomial().lcm(basis[j].leading_monomial());
      const unsigned s = std::max(sugar[i] + l.degree() - basis[i].leading_monomial().degree(),
                                  sugar[j] + l.degree() - basis[j].leading_monomial().degree());
      pending.push_back({i, j, std::move(l), s});
      pending_keys.emplace(i, j);
    }
  };
  for (std::size_t j = std::max<std::size_t>(first_new, 1); j < basis.size(); ++j) add_pairs_for(j);

  auto is_pending = [&](std::size_t a, std::size_t b) {
    return pending_keys.count({std::min(a, b), std::max(a, b)}) > 0;
  };

  while (!pending.empty()) {
    // sugar strategy, ties broken by the smaller lcm
    auto best = std::min_element(pending.begin(), pending.end(), [](const auto& x, const auto& y) {
      if (x.sugar != y.sugar) return x.sugar < y.sugar;
      return grevlex_compare(x.lcm, y.lcm) < 0;
    });
    CriticalPair pair = std::move(*best);
    *best = std::move(pending.back());
    pending.pop_back();
    pending_keys.erase({pair.i, pair.j});

    const Monomial& lm_i = basis[pair.i].leading_monomial();
    const Monomial& lm_j = basis[pair.j].leading_monomial();
    if (lm_i.coprime(lm_j)) continue;  // first criterion

    bool chain = false;  // second criterion
    for (std::size_t k = 0; k < basis.size() && !chain; ++k) {
      if (k == pair.i || k == pair.j) continue;
      chain = basis[k].leading_monomial().divides(pair.lcm) && !is_pending(pair.i, k) && !is_pending(pair.j, k);
    }
    if (chain) continue;

    Polynomial r = reduce(s_polynomial(basis[pair.i], basis[pair.j]), basis);
    if (r.is_zero()) continue;
    if (r.is_constant()) return {Polynomial(Rational(1))};
    basis.push_back(r.monic());
    sugar.push_back(std::max(pair.sugar, basis.back().total_degree()));
    add_pairs_for(basis.size() - 1);
  }
  return basis;
}

std::vector<Polynomial> interreduce(std::vector<Polynomial> basis) {
  // drop generators whose leading monomial is a multiple of another's
  std::vector<Polynomial> minimal;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const Monomial& lm = basis[i].leading_monomial();
    bool redundant = false;
    for (std::size_t j = 0; j < basis.size() && !redundant; ++j) {
      if (i == j) continue;
      const Monomial& other = basis[j].leading_monomial();
      if (other.divides(lm) && (other != lm || j < i)) redundant = true;
    }
    if (!redundant) minimal.push_back(basis[i]);
  }
  std::vector<Polynomial> reduced;
  reduced.reserve(minimal.size());
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    std::vector<Polynomial> others;
    for (std::size_t j = 0; j < minimal.size(); ++j) {
      if (j != i) others.push_back(minimal[j]);
    }
    reduced.push_back(reduce(minimal[i], others).monic());
  }
  std::sort(reduced.begin(), reduced.end(), [](const Polynomial& a, const Polynomial& b) {
    return grevlex_compare(a.leading_monomial(), b.leading_monomial()) > 0;
  });
  return reduced;
}

}  // namespace

Polynomial s_polynomial(const Polynomial& f, const Polynomial& g) {
  const Monomial l = f.leading_monomial().lcm(g.leading_monomial());
  Polynomial s;
  s.add_scaled(1 / f.leading_coefficient(), l.quotient(f.leading_monomial()), f);
  s.add_scaled(-1 / g.leading_coefficient(), l.quotient(g.leading_monomial()), g);
  return s;
}

Polynomial reduce(const Polynomial& p, std::span<const Polynomial> divisors) {
  Polynomial remainder;
  Polynomial work = p;
  while (!work.is_zero()) {
    const Polynomial* d = find_divisor(work.leading_monomial(), divisors);
    if (d == nullptr) {
      auto [m, c] = work.pop_leading_term();
      remainder.add_term(m, c);
      continue;
    }
    const Rational factor = -work.leading_coefficient() / d->leading_coefficient();
    const Monomial shift = work.leading_monomial().quotient(d->leading_monomial());
    work.add_scaled(factor, shift, *d);
  }
  return remainder;
}

bool GroebnerBasis::is_unit_ideal() const {
  return generators_.size() == 1 && generators_.front().is_constant();
}

Polynomial GroebnerBasis::normal_form(const Polynomial& p) const { return reduce(p, generators_); }

bool GroebnerBasis::contains(const Polynomial& p) const {
  // top reduction suffices: an irreducible leading term is never cancelled
  Polynomial work = p;
  while (!work.is_zero()) {
    const Polynomial* d = find_divisor(work.leading_monomial(), generators_);
    if (d == nullptr) return false;
    const Rational factor = -work.leading_coefficient() / d->leading_coefficient();
    const Monomial shift = work.leading_monomial().quotient(d->leading_monomial());
    work.add_scaled(factor, shift, *d);
  }
  return true;
}

GroebnerBasis buchberger(std::span<const Polynomial> gens) {
  std::vector<Polynomial> basis;
  for (const auto& g : gens) {
    if (g.is_zero()) continue;
    if (g.is_constant()) {
      basis = {Polynomial(Rational(1))};
      break;
    }
    basis.push_back(g.monic());
  }
  GroebnerBasis result;
  if (basis.size() == 1 && basis.front().is_constant()) {
    result.generators_ = std::move(basis);
    return result;
  }
  result.generators_ = interreduce(complete(std::move(basis), 0));
  return result;
}

GroebnerBasis GroebnerBasis::extended(std::span<const Polynomial> more) const {
  if (is_unit_ideal()) return *this;
  std::vector<Polynomial> basis = generators_;
  const std::size_t first_new = basis.size();
  for (const auto& p : more) {
    Polynomial r = reduce(p, basis);
    if (r.is_zero()) continue;
    if (r.is_constant()) {
      GroebnerBasis unit;
      unit.generators_ = {Polynomial(Rational(1))};
      return unit;
    }
    basis.push_back(r.monic());
  }
  GroebnerBasis result;
  if (basis.size() == first_new) return *this;
  auto completed = complete(std::move(basis), first_new);
  if (completed.size() == 1 && completed.front().is_constant()) {
    result.generators_ = std::move(completed);
  } else {
    result.generators_ = interreduce(std::move(completed));
  }
  return result;
}

}  // namespace fliess
