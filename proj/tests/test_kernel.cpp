#include <map>
#include <string>
#include <vector>

#include "doctest.h"
#include "fliess/groebner.hpp"
#include "fliess/polynomial.hpp"
#include "support.hpp"

using namespace fliess;
using fliess::testing::poly;
using fliess::testing::q;

namespace {

const std::vector<std::string> xy = {"x", "y"};
const std::vector<std::string> xyz = {"x", "y", "z"};

std::vector<Polynomial> polys(std::initializer_list<const char*> texts, const std::vector<std::string>& names) {
  std::vector<Polynomial> out;
  for (const char* t : texts) out.push_back(poly(t, names));
  return out;
}

}  // namespace

TEST_SUITE("kernel") {

TEST_CASE("ring operations") {
  const Polynomial x = poly("x", xy);
  CHECK((x + (-x)).is_zero());
  CHECK((poly("x + 1", xy) * poly("x - 1", xy)) == poly("x^2 - 1", xy));
  CHECK(q("3/2") * poly("2*x", xy) == poly("3*x", xy));
  CHECK(poly("x*y", xy) - poly("y*x", xy) == Polynomial());
  CHECK(poly("x + y", xy).pow(2) == poly("x^2 + 2*x*y + y^2", xy));
}

TEST_CASE("partial derivatives") {
  CHECK(partial(poly("x^2*y", xy), "x", xy) == poly("2*x*y", xy));
  CHECK(partial(poly("7", xy), "x", xy).is_zero());
  CHECK(partial(poly("x*y + y^2", xy), "y", xy) == poly("x + 2*y", xy));
  CHECK_THROWS_AS(partial(poly("x", xy), "w", xy), ValidationError);
}

TEST_CASE("evaluation") {
  const std::vector<Rational> at23 = {Rational(2), Rational(3)};
  CHECK(poly("x^2*y", xy).evaluate(at23) == 12);
  CHECK(Polynomial().evaluate(std::span<const Rational>()) == 0);
  const std::vector<Rational> at1 = {Rational(1)};
  CHECK(poly("x - 1", xy).evaluate(at1) == 0);
  CHECK_THROWS_AS(poly("x*y", xy).evaluate(at1), ValidationError);
  const std::map<Var, Rational> sparse = {{1, Rational(5)}};
  CHECK(poly("2*y + 1", xy).evaluate(sparse) == 11);
}

TEST_CASE("text syntax") {
  const Polynomial p = poly("3/2*x^2*y - y + 1", xy);
  CHECK(p.to_string(xy) == "3/2*x^2*y - y + 1");
  CHECK(poly(p.to_string(xy), xy) == p);
  CHECK(poly("  x *x*  y ", xy) == poly("x^2*y", xy));
  CHECK(poly("-x - (-y)", xy) == poly("y - x", xy));
  CHECK(Polynomial().to_string(xy) == "0");
  CHECK_THROWS_AS(poly("x + w", xy), ParseError);
  CHECK_THROWS_AS(poly("x +", xy), ParseError);
  CHECK_THROWS_AS(poly("x^", xy), ParseError);
  std::vector<std::string> names = {"x"};
  const Polynomial e = parse_polynomial_extending("x*b + b^2", names);
  CHECK(names == std::vector<std::string>{"x", "b"});
  CHECK(e.to_string(names) == "x*b + b^2");
}

TEST_CASE("parse error positions") {
  try {
    poly("x +\n  2*w", xy);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 5);
  }
}

TEST_CASE("rationals") {
  CHECK(parse_rational("-6/4") == Rational(-3, 2));
  CHECK(to_string(parse_rational("4/2")) == "2");
  CHECK(to_string(parse_rational("+0/5")) == "0");
  CHECK_THROWS_AS(parse_rational("1/0"), ValidationError);
  CHECK_THROWS_AS(parse_rational("1.5"), ValidationError);
  CHECK(binomial(6, 2) == 15);
  CHECK(pow(Rational(-1, 2), 3) == Rational(-1, 8));
}

TEST_CASE("grevlex order") {
  // x > y > z; degree first, then reverse lexicographic
  const Polynomial p = poly("z^2 + x*y + y^2 + x^2 + x*z + x + 1", xyz);
  std::vector<std::string> order;
  for (const auto& [m, c] : p.terms()) order.push_back(Polynomial::term(c, m).to_string(xyz));
  CHECK(order == std::vector<std::string>{"x^2", "x*y", "y^2", "x*z", "z^2", "x", "1"});
}

TEST_CASE("buchberger examples") {
  CHECK(buchberger(polys({"x - 1"}, xy)).generators() == polys({"x - 1"}, xy));
  CHECK(buchberger(polys({"x*y - 1", "x^2"}, xy)).is_unit_ideal());
  CHECK(buchberger({}).is_zero_ideal());
  // zero generators are ignored
  CHECK(buchberger(polys({"0", "0"}, xy)).is_zero_ideal());
}

TEST_CASE("normal form examples") {
  CHECK(buchberger(polys({"x - 1"}, xy)).normal_form(poly("x^2", xy)) == poly("1", xy));
  CHECK(GroebnerBasis().normal_form(poly("x", xy)) == poly("x", xy));
  CHECK(buchberger(polys({"y"}, xy)).normal_form(poly("x + y", xy)) == poly("x", xy));
}

TEST_CASE("ideal membership") {
  // twisted cubic: the reduced basis and a few members / non-members
  const GroebnerBasis cubic = buchberger(polys({"y - x^2", "z - x^3"}, xyz));
  CHECK(cubic.generators() == polys({"x^2 - y", "x*y - z", "y^2 - x*z"}, xyz));
  CHECK(cubic.contains(poly("x*z - y^2", xyz)));
  CHECK(cubic.contains(poly("y^3 - z^2", xyz)));
  CHECK_FALSE(cubic.contains(poly("x", xyz)));
  CHECK_FALSE(cubic.contains(poly("y - z", xyz)));

  // (x^2 + y^2 - 1, x - y): 2*y^2 - 1 is in, y is not
  const GroebnerBasis circle = buchberger(polys({"x^2 + y^2 - 1", "x - y"}, xy));
  CHECK(circle.generators() == polys({"y^2 - 1/2", "x - y"}, xy));
  CHECK(circle.contains(poly("2*y^2 - 1", xy)));
  CHECK(circle.contains(poly("x*y - 1/2", xy)));
  CHECK_FALSE(circle.contains(poly("y", xy)));

  // a zero-dimensional system with no common root has the unit ideal
  CHECK(buchberger(polys({"x^2 - 1", "x - 2"}, xy)).is_unit_ideal());

  // principal ideal: membership is divisibility
  const GroebnerBasis principal = buchberger(polys({"x*y + 1"}, xy));
  CHECK(principal.contains(poly("x^2*y^2 - 1", xy)));
  CHECK_FALSE(principal.contains(poly("x*y - 1", xy)));
}

TEST_CASE("extended bases") {
  const GroebnerBasis a = buchberger(polys({"y - x^2"}, xyz));
  const std::vector<Polynomial> more = polys({"z - x^3"}, xyz);
  CHECK(a.extended(more) == buchberger(polys({"y - x^2", "z - x^3"}, xyz)));
  CHECK(a.extended(polys({"x^2*z - y*z"}, xyz)) == a);
  CHECK(a.extended(polys({"1"}, xyz)).is_unit_ideal());
}

TEST_CASE("s-polynomials and reduction") {
  const Polynomial f = poly("x^2*y - 1", xy);
  const Polynomial g = poly("x*y^2 - x", xy);
  CHECK(s_polynomial(f, g) == poly("x^2 - y", xy));
  const std::vector<Polynomial> divisors = {poly("x - 1", xy)};
  CHECK(reduce(poly("x^3 + y", xy), divisors) == poly("y + 1", xy));
}

TEST_CASE("random ideal properties") {
  testing::Rng rng(20261016);
  const testing::PolyShape shape{2, 3, 3, 2, 0.0};
  for (int round = 0; round < 80; ++round) {
    const std::size_t vars = static_cast<std::size_t>(rng.uniform(1, 3));
    std::vector<Polynomial> gens;
    const int count = rng.uniform(1, 3);
    for (int i = 0; i < count; ++i) gens.push_back(testing::random_polynomial(rng, vars, shape));
    const GroebnerBasis gb = buchberger(gens);
    CAPTURE(round);

    // idempotence
    CHECK(buchberger(gb.generators()) == gb);
    // containment both ways: inputs reduce to 0, basis elements are combinations
    for (const auto& g : gens) CHECK(gb.contains(g));
    // ideal multiples vanish
    const Polynomial mult = testing::random_polynomial(rng, vars, shape);
    CHECK(gb.normal_form(gens.front() * mult).is_zero());
    Polynomial combo;
    for (const auto& g : gens) combo += g * testing::random_polynomial(rng, vars, shape);
    CHECK(gb.contains(combo));
    // normal forms are unique: p and p + ideal element agree
    const Polynomial p = testing::random_polynomial(rng, vars, shape);
    CHECK(gb.normal_form(p + combo) == gb.normal_form(p));
    CHECK(gb.normal_form(gb.normal_form(p)) == gb.normal_form(p));
    // reducedness: each generator is monic and irreducible by the others
    for (std::size_t i = 0; i < gb.generators().size(); ++i) {
      const Polynomial& g = gb.generators()[i];
      CHECK(g.leading_coefficient() == 1);
      std::vector<Polynomial> others;
      for (std::size_t j = 0; j < gb.generators().size(); ++j) {
        if (j != i) others.push_back(gb.generators()[j]);
      }
      CHECK(reduce(g, others) == g);
    }
    // the basis generates nothing beyond the inputs: buchberger of inputs plus basis is unchanged
    std::vector<Polynomial> both = gens;
    both.insert(both.end(), gb.generators().begin(), gb.generators().end());
    CHECK(buchberger(both) == gb);
  }
}

TEST_CASE("evaluation is a ring homomorphism") {
  testing::Rng rng(7);
  for (int round = 0; round < 200; ++round) {
    const std::size_t vars = 3;
    const Polynomial p = testing::random_polynomial(rng, vars);
    const Polynomial r = testing::random_polynomial(rng, vars);
    std::vector<Rational> pt;
    for (std::size_t v = 0; v < vars; ++v) pt.push_back(rng.nonzero_rational(4, 3));
    CHECK((p * r).evaluate(pt) == p.evaluate(pt) * r.evaluate(pt));
    CHECK((p + r).evaluate(pt) == p.evaluate(pt) + r.evaluate(pt));
  }
}

TEST_CASE("leibniz rule for partial derivatives") {
  testing::Rng rng(8);
  for (int round = 0; round < 200; ++round) {
    const Polynomial p = testing::random_polynomial(rng, 3);
    const Polynomial r = testing::random_polynomial(rng, 3);
    const Var v = static_cast<Var>(rng.uniform(0, 2));
    CHECK((p * r).partial(v) == p.partial(v) * r + p * r.partial(v));
  }
}

}  // TEST_SUITE
