#include "fliess/decide.hpp"

#include <algorithm>
#include <sstream>

#include "fliess/error.hpp"
#include "fliess/oracle.hpp"

namespace fliess {

ZeronessReport zeroness(const ShuffleAutomaton& input, const ZeronessOptions& options) {
  const ShuffleAutomaton a = simplify(input);
  ZeronessReport report;

  if (!options.saturate && !options.record_chain) {
    const TruncatedSeries head = truncate(a, options.probe_depth);
    if (!head.is_zero()) {
      const Word w = head.table().begin()->first;
      report.is_zero = false;
      report.saturated = false;
      report.saturation_depth = w.size();
      report.generators.emplace_back(w, derive_config(a, w, a.initial()));
      report.witness = w;
      return report;
    }
  }

  const std::vector<Rational>& at = a.output();
  GroebnerBasis basis;
  if (a.initial().is_zero()) {
    if (options.record_chain) report.chain.push_back(basis);
    return report;
  }

  // Kept configurations all vanish at the outputs until a witness shows up,
  // so the ideal sits inside the maximal ideal of that point and a candidate
  // with a nonzero value cannot belong to it.
  auto consider = [&](Word w, Polynomial cfg) {
    const bool nonzero = cfg.evaluate(at) != 0;
    if ((report.witness || !nonzero) && basis.contains(cfg)) return false;
    if (nonzero && !report.witness) {
      report.witness = w;
      report.is_zero = false;
    }
    if (!nonzero || options.saturate) basis = basis.extended(std::span<const Polynomial>(&cfg, 1));
    report.generators.emplace_back(std::move(w), std::move(cfg));
    return true;
  };

  consider(Word{}, a.initial());
  if (options.record_chain) report.chain.push_back(basis);

  std::size_t level_begin = 0;
  std::size_t depth = 0;
  while (report.is_zero || options.saturate) {
    const std::size_t level_end = report.generators.size();
    for (std::size_t i = level_begin; i < level_end; ++i) {
      for (std::uint32_t letter = 0; letter < a.alphabet_size(); ++letter) {
        Polynomial next = derive_config(a, Letter{letter}, report.generators[i].second);
        if (next.is_zero()) continue;
        Word w = report.generators[i].first;
        w.push_back(Letter{letter});
        consider(std::move(w), std::move(next));
        if (!report.is_zero && !options.saturate) break;
      }
      if (!report.is_zero && !options.saturate) break;
    }
    if (report.generators.size() == level_end) break;
    ++depth;
    level_begin = level_end;
    if (options.record_chain) report.chain.push_back(basis);
  }
  report.saturation_depth = depth;
  report.saturated = report.is_zero || options.saturate;
  report.generator_count = basis.generators().size();
  return report;
}

ZeronessReport equal(const ShuffleAutomaton& a, const ShuffleAutomaton& b, const ZeronessOptions& options) {
  return zeroness(sum(a, scale(Rational(-1), b)), options);
}

bool structurally_zero(const ShuffleAutomaton& a) { return a.initial().is_zero(); }

bool structurally_zero(const PolynomialSystem& s) { return s.output.is_zero(); }

std::string property_name(Property p) {
  switch (p) {
    case Property::Zeroness: return "zeroness";
    case Property::Equivalence: return "equivalence";
    case Property::Independence: return "independence";
    case Property::Linearity: return "linearity";
    case Property::Analyticity: return "analyticity";
    case Property::Stationarity: return "stationarity";
    case Property::TimeInvariance: return "time-invariance";
    case Property::Support: return "support";
  }
  throw InternalError("unknown property");
}

std::string verdict_word(Property p, bool verdict) {
  switch (p) {
    case Property::Zeroness: return verdict ? "zero" : "nonzero";
    case Property::Equivalence: return verdict ? "equal" : "different";
    case Property::Independence: return verdict ? "independent" : "dependent";
    case Property::Linearity: return verdict ? "linear" : "nonlinear";
    case Property::Analyticity: return verdict ? "analytic" : "not-analytic";
    case Property::Stationarity: return verdict ? "stationary" : "nonstationary";
    case Property::TimeInvariance: return verdict ? "time-invariant" : "time-varying";
    case Property::Support: return verdict ? "contained" : "not-contained";
  }
  throw InternalError("unknown property");
}

std::size_t AnalysisReport::saturation_depth() const {
  std::size_t depth = 0;
  for (const ZeronessReport& r : reports) depth = std::max(depth, r.saturation_depth);
  return depth;
}

namespace {

AnalysisReport from_zeroness(Property p, ZeronessReport z) {
  AnalysisReport out;
  out.property = p;
  out.verdict = z.is_zero;
  out.witness = z.witness;
  out.reports.push_back(std::move(z));
  return out;
}

std::vector<std::uint32_t> letters_of(const std::set<std::uint32_t>& s) { return {s.begin(), s.end()}; }

// Automaton over alphabet + 1 letters whose last letter acts as the
// commutator Delta_y Delta_x - Delta_x Delta_y, restricted to words with
// exactly one such letter. Its coefficient on u#v is g(u x y v) - g(u y x v).
ShuffleAutomaton commutator_automaton(const ShuffleAutomaton& a, Letter x, Letter y) {
  const std::size_t n = a.alphabet_size();
  std::vector<std::vector<Polynomial>> delta = a.transitions();
  std::vector<Polynomial> marker;
  marker.reserve(a.size());
  for (Var i = 0; i < a.size(); ++i) {
    marker.push_back(derive_config(a, y, a.transition(x, i)) - derive_config(a, x, a.transition(y, i)));
  }
  delta.push_back(std::move(marker));
  ShuffleAutomaton extended(n + 1, a.nonterminals(), a.initial(), a.output(), std::move(delta));
  return restrict_automaton(extended, exactly_one_of(n + 1, {static_cast<std::uint32_t>(n)}));
}

}  // namespace

AnalysisReport support_subset(const ShuffleAutomaton& a, const CommutativeRecognizer& r,
                              const ZeronessOptions& options) {
  if (r.alphabet_size() != a.alphabet_size()) throw ValidationError("recognizer alphabet differs from the automaton's");
  // An empty support is contained in everything, and the restricted
  // automaton is much larger than a.
  ZeronessReport whole = zeroness(a, options);
  if (whole.is_zero) return from_zeroness(Property::Support, std::move(whole));
  return from_zeroness(Property::Support, zeroness(restrict_automaton(a, complement(r)), options));
}

AnalysisReport support_subset(const ShuffleAutomaton& a, const CountConstraint& c, const ZeronessOptions& options) {
  AnalysisReport out = support_subset(a, compile_constraint(c, a.alphabet_size()), options);
  out.detail = c.to_string();
  return out;
}

AnalysisReport commutative_in(const ShuffleAutomaton& a, const std::set<std::uint32_t>& gamma,
                              const ZeronessOptions& options) {
  for (std::uint32_t g : gamma) {
    if (g >= a.alphabet_size()) throw ValidationError("letter a" + std::to_string(g) + " outside the alphabet");
  }
  AnalysisReport out;
  out.property = Property::Analyticity;
  out.inputs = letters_of(gamma);

  auto fail = [&](Word witness, Word partner, std::string detail) {
    out.verdict = false;
    out.witness = std::move(witness);
    out.partner = std::move(partner);
    out.detail = std::move(detail);
    return out;
  };

  for (auto i = gamma.begin(); i != gamma.end(); ++i) {
    for (auto j = std::next(i); j != gamma.end(); ++j) {
      const Letter x{*i};
      const Letter y{*j};
      ZeronessReport z = equal(left_derivative(left_derivative(a, x), y),
                               left_derivative(left_derivative(a, y), x), options);
      const bool ok = z.is_zero;
      out.reports.push_back(std::move(z));
      if (!ok) {
        const Word& w = *out.reports.back().witness;
        return fail(concat({x, y}, w), concat({y, x}, w), "swap " + to_string(x) + to_string(y));
      }
    }
  }
  for (std::uint32_t g : gamma) {
    const Letter x{g};
    ZeronessReport z = equal(left_derivative(a, x), right_derivative(a, x), options);
    const bool ok = z.is_zero;
    out.reports.push_back(std::move(z));
    if (!ok) {
      const Word& w = *out.reports.back().witness;
      return fail(concat({x}, w), concat(w, {x}), "rotation " + to_string(x));
    }
  }
  if (!gamma.empty() && gamma.size() < a.alphabet_size()) {
    const std::uint32_t marker = static_cast<std::uint32_t>(a.alphabet_size());
    for (std::uint32_t i = 0; i < a.alphabet_size(); ++i) {
      for (std::uint32_t j = i + 1; j < a.alphabet_size(); ++j) {
        if (!gamma.count(i) && !gamma.count(j)) continue;
        const Letter x{i};
        const Letter y{j};
        ZeronessReport z = zeroness(commutator_automaton(a, x, y), options);
        const bool ok = z.is_zero;
        out.reports.push_back(std::move(z));
        if (!ok) {
          const Word& w = *out.reports.back().witness;
          const auto pos = std::find(w.begin(), w.end(), Letter{marker});
          Word u(w.begin(), pos);
          Word v(pos + 1, w.end());
          return fail(concat(concat(u, {x, y}), v), concat(concat(u, {y, x}), v),
                      "transposition " + to_string(x) + to_string(y));
        }
      }
    }
  }
  return out;
}

AnalysisReport stationary(const ShuffleAutomaton& a, const ZeronessOptions& options) {
  AnalysisReport out = from_zeroness(Property::Stationarity, zeroness(right_derivative(a, Letter{0}), options));
  if (out.witness) out.witness->push_back(Letter{0});
  return out;
}

AnalysisReport time_invariant(const ShuffleAutomaton& a, const ZeronessOptions& options) {
  AnalysisReport out = support_subset(a, avoiding_letters(a.alphabet_size(), {0}), options);
  out.property = Property::TimeInvariance;
  return out;
}

AnalysisReport analyze(const ShuffleAutomaton& a, const Query& query, const ZeronessOptions& options) {
  const std::size_t m = a.alphabet_size() - 1;
  std::vector<std::uint32_t> inputs = query.inputs;
  std::sort(inputs.begin(), inputs.end());
  inputs.erase(std::unique(inputs.begin(), inputs.end()), inputs.end());
  for (std::uint32_t j : inputs) {
    if (j < 1 || j > m) {
      throw ValidationError("input u" + std::to_string(j) + " out of range 1.." + std::to_string(m));
    }
  }

  AnalysisReport out;
  switch (query.property) {
    case Property::Zeroness:
      out = from_zeroness(Property::Zeroness, zeroness(a, options));
      break;
    case Property::Equivalence:
      if (!query.other) throw ValidationError("equivalence needs a second automaton");
      out = from_zeroness(Property::Equivalence, equal(a, *query.other, options));
      break;
    case Property::Independence:
      out = support_subset(a, avoiding_letters(a.alphabet_size(), inputs), options);
      break;
    case Property::Linearity:
      out = support_subset(a, exactly_one_of(a.alphabet_size(), inputs), options);
      break;
    case Property::Analyticity:
      out = commutative_in(a, std::set<std::uint32_t>(inputs.begin(), inputs.end()), options);
      break;
    case Property::Stationarity:
      out = stationary(a, options);
      break;
    case Property::TimeInvariance:
      out = time_invariant(a, options);
      break;
    case Property::Support:
      if (!query.constraint) throw ValidationError("support check needs a constraint");
      out = support_subset(a, *query.constraint, options);
      break;
  }
  out.property = query.property;
  out.inputs = inputs;
  return out;
}

AnalysisReport analyze(const PolynomialSystem& s, const Query& query, const ZeronessOptions& options) {
  return analyze(system_to_automaton(s), query, options);
}

namespace {

std::string join_inputs(const std::vector<std::uint32_t>& inputs) {
  std::string out;
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(inputs[i]);
  }
  return out;
}

bool uses_inputs(Property p) {
  return p == Property::Independence || p == Property::Linearity || p == Property::Analyticity;
}

std::size_t total_generators(const AnalysisReport& r) {
  std::size_t n = 0;
  for (const ZeronessReport& z : r.reports) n = std::max(n, z.generator_count);
  return n;
}

}  // namespace

std::string format_text(const AnalysisReport& r) {
  std::ostringstream out;
  out << "verdict=" << verdict_word(r.property, r.verdict) << '\n';
  out << "property: " << property_name(r.property);
  if (uses_inputs(r.property)) out << " in inputs {" << join_inputs(r.inputs) << '}';
  if (!r.detail.empty() && r.property == Property::Support) out << " of " << r.detail;
  out << '\n';
  if (r.witness) {
    out << "witness: " << to_string(*r.witness) << '\n';
    if (r.partner) out << "differs from: " << to_string(*r.partner) << " (" << r.detail << ")\n";
  }
  out << "saturation depth: " << r.saturation_depth() << '\n';
  out << "ideal checks: " << r.reports.size() << ", largest basis: " << total_generators(r) << '\n';
  return out.str();
}

std::string format_kv(const AnalysisReport& r) {
  std::ostringstream out;
  out << "verdict=" << verdict_word(r.property, r.verdict) << '\n';
  out << "holds=" << (r.verdict ? "true" : "false") << '\n';
  out << "property=" << property_name(r.property) << '\n';
  if (uses_inputs(r.property)) out << "inputs=" << join_inputs(r.inputs) << '\n';
  if (r.witness) out << "witness=" << to_string(*r.witness) << '\n';
  if (r.partner) out << "partner=" << to_string(*r.partner) << '\n';
  out << "saturation_depth=" << r.saturation_depth() << '\n';
  out << "generators=" << total_generators(r) << '\n';
  return out.str();
}

}  // namespace fliess
