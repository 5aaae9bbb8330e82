#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "fliess/decide.hpp"
#include "fliess/oracle.hpp"
#include "fliess/system.hpp"
#include "support.hpp"

using namespace fliess;
using fliess::testing::word;

namespace {

/// One nonterminal X with init X, delta_a X = X and the given output.
ShuffleAutomaton constant_x(const Rational& out) {
  const Polynomial x = Polynomial::variable(0);
  return ShuffleAutomaton(1, {"X"}, x, {out}, {{x}});
}

testing::AutomatonShape small_shape(testing::Rng& rng) {
  testing::AutomatonShape shape;
  shape.alphabet = static_cast<std::size_t>(rng.uniform(1, 2));
  shape.max_nonterminals = 2;
  return shape;
}

/// Depth at which the oracle is asked: 6, or the witness length when a
/// nonzero series has no nonzero coefficient up to 6.
std::size_t referee_depth(const ZeronessReport& z) {
  return z.witness ? std::max<std::size_t>(6, z.witness->size()) : 6;
}

}  // namespace

TEST_SUITE("decide") {

TEST_CASE("zeroness examples") {
  const ZeronessReport zero = zeroness(constant_x(Rational(0)));
  CHECK(zero.is_zero);
  CHECK_FALSE(zero.witness);

  const ZeronessReport one = zeroness(constant_x(Rational(1)));
  CHECK_FALSE(one.is_zero);
  REQUIRE(one.witness);
  CHECK(one.witness->empty());

  const ZeronessReport w = zeroness(word_automaton(3, word("a1a2")));
  CHECK_FALSE(w.is_zero);
  REQUIRE(w.witness);
  CHECK(*w.witness == word("a1a2"));
  CHECK(w.saturation_depth >= 2);

  CHECK(zeroness(zero_automaton(2)).is_zero);
}

TEST_CASE("zeroness finds witnesses beyond the probe depth") {
  ZeronessOptions options;
  options.probe_depth = 0;
  const ShuffleAutomaton long_word = word_automaton(2, word("a1a0a0a1a1a0a0a1"));
  const ZeronessReport z = zeroness(long_word, options);
  REQUIRE(z.witness);
  CHECK(*z.witness == word("a1a0a0a1a1a0a0a1"));
  const ZeronessReport probed = zeroness(long_word);
  REQUIRE(probed.witness);
  CHECK(*probed.witness == *z.witness);
}

TEST_CASE("equal examples") {
  const ShuffleAutomaton exp = testing::exp_automaton();
  CHECK(equal(exp, exp).is_zero);

  const Polynomial z = Polynomial::variable(0);
  const ShuffleAutomaton doubling(1, {"Z"}, z, {Rational(1)}, {{Polynomial(Rational(2)) * z}});
  CHECK(equal(shuffle(exp, exp), doubling).is_zero);

  const ZeronessReport d = equal(word_automaton(3, word("a1a2")), word_automaton(3, word("a2a1")));
  CHECK_FALSE(d.is_zero);
  REQUIRE(d.witness);
  CHECK(*d.witness == word("a1a2"));

  // n! against 2^n: 1 = 1 on eps, 1 != 2 on a0
  const ZeronessReport f = equal(testing::factorial_automaton(), doubling);
  REQUIRE(f.witness);
  CHECK(*f.witness == word("a0"));
  CHECK(equal(testing::factorial_automaton(), testing::factorial_automaton()).is_zero);
}

TEST_CASE("support_subset examples") {
  CHECK(support_subset(word_automaton(2, word("a0a0")), parse_constraint("count(a1) == 0", 2)).verdict);

  const AnalysisReport exp = support_subset(testing::exp_automaton(), parse_constraint("count(a0) <= 2", 1));
  CHECK_FALSE(exp.verdict);
  REQUIRE(exp.witness);
  CHECK(*exp.witness == word("a0a0a0"));

  CHECK(support_subset(zero_automaton(2), parse_constraint("false", 2)).verdict);
  CHECK(support_subset(testing::exp_automaton(2), parse_constraint("true", 2)).verdict);

  const AnalysisReport odd = support_subset(testing::exp_automaton(), parse_constraint("count(a0) % 2 == 1", 1));
  REQUIRE(odd.witness);
  CHECK(*odd.witness == word("eps"));
  CHECK_THROWS_AS(support_subset(testing::exp_automaton(), avoiding_letters(2, {1})), ValidationError);
}

TEST_CASE("commutative_in examples") {
  const ShuffleAutomaton sym = sum(word_automaton(3, word("a1a2")), word_automaton(3, word("a2a1")));
  CHECK(commutative_in(sym, {1, 2}).verdict);

  const AnalysisReport single = commutative_in(word_automaton(3, word("a1a2")), {1, 2});
  CHECK_FALSE(single.verdict);
  REQUIRE(single.witness);
  REQUIRE(single.partner);
  const ShuffleAutomaton a12 = word_automaton(3, word("a1a2"));
  CHECK(coeff(a12, *single.witness) != coeff(a12, *single.partner));

  testing::Rng rng(41);
  CHECK(commutative_in(testing::random_automaton(rng), {}).verdict);
  CHECK_THROWS_AS(commutative_in(sym, {3}), ValidationError);
}

TEST_CASE("commutativity against letters outside gamma") {
  // a0 crosses a1 in every position: the orbit of a0a1a1
  const ShuffleAutomaton orbit = sum(sum(word_automaton(2, word("a0a1a1")), word_automaton(2, word("a1a0a1"))),
                                     word_automaton(2, word("a1a1a0")));
  CHECK(commutative_in(orbit, {0}).verdict);
  CHECK(commutative_in(orbit, {1}).verdict);

  // a0 can reach the front but not the middle
  const ShuffleAutomaton ends = sum(word_automaton(3, word("a0a1a2")), word_automaton(3, word("a1a2a0")));
  const AnalysisReport r = commutative_in(ends, {0});
  CHECK_FALSE(r.verdict);
  REQUIRE(r.witness);
  REQUIRE(r.partner);
  CHECK(coeff(ends, *r.witness) != coeff(ends, *r.partner));
  CHECK_FALSE(naive_commutative_in(truncate(ends, 3), {0}));
}

TEST_CASE("system analyses") {
  const PolynomialSystem at0 = parse_system("x1' = u1 * x1; y = x1; x1(0) = 0");
  const PolynomialSystem at1 = parse_system("x1' = u1 * x1; y = x1; x1(0) = 1");
  Query independence;
  independence.property = Property::Independence;
  independence.inputs = {1};
  CHECK(analyze(at0, independence).verdict);
  const AnalysisReport dep = analyze(at1, independence);
  CHECK_FALSE(dep.verdict);
  REQUIRE(dep.witness);
  CHECK(*dep.witness == word("a1"));

  Query linearity;
  linearity.property = Property::Linearity;
  linearity.inputs = {1};
  CHECK(analyze(parse_system("x1' = u1; y = x1; x1(0) = 0"), linearity).verdict);
  CHECK_FALSE(analyze(at1, linearity).verdict);

  Query zero;
  CHECK(analyze(parse_system("x1' = 0; y = x1; x1(0) = 0"), zero).verdict);
  const AnalysisReport nz = analyze(parse_system("x1' = 0; y = x1; x1(0) = 1"), zero);
  CHECK_FALSE(nz.verdict);
  REQUIRE(nz.witness);
  CHECK(nz.witness->empty());

  Query bad = independence;
  bad.inputs = {2};
  CHECK_THROWS_AS(analyze(at1, bad), ValidationError);
  bad.inputs = {0};
  CHECK_THROWS_AS(analyze(at1, bad), ValidationError);
}

TEST_CASE("stationarity and time invariance") {
  // y = t: the series a0
  const PolynomialSystem clock = parse_system("x1' = 1; y = x1; x1(0) = 0");
  Query stat;
  stat.property = Property::Stationarity;
  const AnalysisReport s = analyze(clock, stat);
  CHECK_FALSE(s.verdict);
  REQUIRE(s.witness);
  CHECK(*s.witness == word("a0"));
  Query ti;
  ti.property = Property::TimeInvariance;
  CHECK_FALSE(analyze(clock, ti).verdict);

  // y = int u1: the series a1
  const PolynomialSystem integrator = parse_system("x1' = u1; y = x1; x1(0) = 0");
  CHECK(analyze(integrator, stat).verdict);
  CHECK(analyze(integrator, ti).verdict);

  CHECK(stationary(word_automaton(2, word("a0a1"))).verdict);
  const AnalysisReport late = time_invariant(word_automaton(2, word("a1a0")));
  REQUIRE(late.witness);
  CHECK(*late.witness == word("a1a0"));
}

TEST_CASE("structural checks") {
  CHECK(structurally_zero(zero_automaton(1)));
  CHECK_FALSE(structurally_zero(constant_x(Rational(0))));
  CHECK_FALSE(structurally_zero(parse_system("x1' = 0; y = x1; x1(0) = 0")));
  CHECK(structurally_zero(parse_system("x1' = x1; y = 0; x1(0) = 1")));
}

TEST_CASE("report formats") {
  const AnalysisReport exp = support_subset(testing::exp_automaton(), parse_constraint("count(a0) <= 2", 1));
  const std::string kv = format_kv(exp);
  CHECK(kv.rfind("verdict=not-contained\n", 0) == 0);
  CHECK(kv.find("witness=a0a0a0\n") != std::string::npos);
  CHECK(kv.find("saturation_depth=") != std::string::npos);
  const std::string text = format_text(exp);
  CHECK(text.rfind("verdict=not-contained\n", 0) == 0);
  CHECK(text.find("witness: a0a0a0") != std::string::npos);

  Query q;
  q.property = Property::Analyticity;
  q.inputs = {2, 1};
  const AnalysisReport a = analyze(word_automaton(3, word("a1a2")), q);
  CHECK(format_kv(a).find("inputs=1,2\n") != std::string::npos);
  CHECK(format_kv(a).find("partner=") != std::string::npos);
  CHECK(format_text(a).rfind("verdict=not-analytic\n", 0) == 0);
}

TEST_CASE("zeroness agrees with the oracle") {
  testing::Rng rng(42);
  int nonzero = 0;
  for (int round = 0; round < 60; ++round) {
    testing::AutomatonShape shape = small_shape(rng);
    shape.max_nonterminals = 3;
    const ShuffleAutomaton a = testing::random_automaton(rng, shape);
    const ZeronessReport z = zeroness(a);
    CAPTURE(print_automaton(a));
    CHECK(naive_zero(truncate(a, referee_depth(z))) == z.is_zero);
    CHECK(z.witness.has_value() != z.is_zero);
    if (z.witness) {
      ++nonzero;
      CHECK(z.witness->size() <= z.saturation_depth);
      CHECK(coeff(a, *z.witness) != 0);
      // the witness is the shortlex-least nonzero word
      for (const Word& w : words_up_to(a.alphabet_size(), z.witness->size())) {
        if (w == *z.witness) break;
        CHECK(coeff(a, w) == 0);
      }
    }
  }
  CHECK(nonzero > 0);
}

TEST_CASE("zero series built by identities") {
  testing::Rng rng(43);
  for (int round = 0; round < 25; ++round) {
    const testing::AutomatonShape shape = small_shape(rng);
    const ShuffleAutomaton a = testing::random_automaton(rng, shape);
    const ShuffleAutomaton b = testing::random_automaton(rng, shape);
    CAPTURE(print_automaton(a));
    CAPTURE(print_automaton(b));
    CHECK(equal(a, a).is_zero);
    CHECK(equal(shuffle(a, b), shuffle(b, a)).is_zero);
    const Letter x{static_cast<std::uint32_t>(rng.uniform(0, static_cast<int>(shape.alphabet) - 1))};
    CHECK(equal(left_derivative(sum(a, b), x), sum(left_derivative(a, x), left_derivative(b, x))).is_zero);
    CHECK(equal(right_derivative(left_derivative(a, x), x), left_derivative(right_derivative(a, x), x)).is_zero);
  }
}

TEST_CASE("saturated chains are monotone and vanish to their depth") {
  testing::Rng rng(44);
  ZeronessOptions options;
  options.record_chain = true;
  options.saturate = true;
  for (int round = 0; round < 30; ++round) {
    const ShuffleAutomaton a = testing::random_automaton(rng, small_shape(rng));
    // half the rounds use a zero series
    const ShuffleAutomaton target = round % 2 ? a : sum(a, scale(Rational(-1), a));
    const ZeronessReport z = zeroness(target, options);
    CAPTURE(print_automaton(target));
    CHECK(z.saturated);
    for (std::size_t n = 0; n + 1 < z.chain.size(); ++n) {
      for (const Polynomial& g : z.chain[n].generators()) CHECK(z.chain[n + 1].contains(g));
    }
    if (!z.chain.empty()) {
      // every reachable configuration of the simplified automaton lies in the final ideal
      const ShuffleAutomaton s = simplify(target);
      for (const Word& w : words_up_to(s.alphabet_size(), z.saturation_depth + 1)) {
        CHECK(z.chain.back().contains(derive_config(s, w, s.initial())));
      }
    }
    const ZeronessReport quick = zeroness(target);
    CHECK(quick.is_zero == z.is_zero);
    CHECK(quick.witness == z.witness);
    if (z.is_zero) CHECK(naive_zero(truncate(target, z.saturation_depth)));
  }
}

TEST_CASE("equal agrees with the oracle") {
  testing::Rng rng(45);
  for (int round = 0; round < 40; ++round) {
    const testing::AutomatonShape shape = small_shape(rng);
    const ShuffleAutomaton a = testing::random_automaton(rng, shape);
    const ShuffleAutomaton b = rng.chance(0.5) ? testing::random_automaton(rng, shape)
                                               : sum(scale(Rational(1, 2), a), scale(Rational(1, 2), a));
    const ZeronessReport z = equal(a, b);
    CAPTURE(print_automaton(a));
    CAPTURE(print_automaton(b));
    const std::size_t depth = referee_depth(z);
    CHECK(naive_equal(truncate(a, depth), truncate(b, depth)) == z.is_zero);
    if (z.witness) CHECK(coeff(a, *z.witness) != coeff(b, *z.witness));
  }
}

TEST_CASE("support_subset agrees with the oracle") {
  testing::Rng rng(46);
  for (int round = 0; round < 40; ++round) {
    const testing::AutomatonShape shape = small_shape(rng);
    const ShuffleAutomaton a = testing::random_automaton(rng, shape);
    const CountConstraint c = testing::random_constraint(rng, shape.alphabet);
    const CommutativeRecognizer r = compile_constraint(c, shape.alphabet);
    const AnalysisReport report = support_subset(a, c);
    CAPTURE(print_automaton(a));
    CAPTURE(c.to_string());
    const std::size_t depth = report.witness ? std::max<std::size_t>(6, report.witness->size()) : 6;
    CHECK(naive_support_subset(truncate(a, depth), r) == report.verdict);
    if (report.witness) {
      CHECK(coeff(a, *report.witness) != 0);
      CHECK_FALSE(member(r, *report.witness));
    }
  }
}

TEST_CASE("commutative_in agrees with the oracle") {
  testing::Rng rng(47);
  int holds = 0;
  for (int round = 0; round < 40; ++round) {
    testing::AutomatonShape shape = small_shape(rng);
    shape.alphabet = 2;
    ShuffleAutomaton a = testing::random_automaton(rng, shape);
    // equal derivations make coefficients depend on length only
    if (round % 2) {
      a = ShuffleAutomaton(2, a.nonterminals(), a.initial(), a.output(), {a.transitions()[0], a.transitions()[0]});
    }
    std::set<std::uint32_t> gamma;
    for (std::uint32_t g = 0; g < 2; ++g) {
      if (rng.chance(0.5)) gamma.insert(g);
    }
    const AnalysisReport report = commutative_in(a, gamma);
    CAPTURE(print_automaton(a));
    holds += report.verdict;
    const std::size_t depth = report.witness ? std::max<std::size_t>(6, report.witness->size()) : 6;
    CHECK(naive_commutative_in(truncate(a, depth), gamma) == report.verdict);
    if (!report.verdict) {
      REQUIRE(report.witness);
      REQUIRE(report.partner);
      CHECK(coeff(a, *report.witness) != coeff(a, *report.partner));
    }
  }
  CHECK(holds > 0);
}

}  // TEST_SUITE
