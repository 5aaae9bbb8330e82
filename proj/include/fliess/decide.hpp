#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "fliess/automaton.hpp"
#include "fliess/commlang.hpp"
#include "fliess/groebner.hpp"
#include "fliess/system.hpp"
#include "fliess/word.hpp"

namespace fliess {

struct ZeronessOptions {
  /// Keep the basis of every level (for chain diagnostics and tests).
  bool record_chain = false;
  /// Keep building the chain after a nonzero configuration is found. By
  /// default the search returns at the first kept configuration with a
  /// nonzero value; the verdict and witness are the same either way, but
  /// saturation_depth is then the depth reached rather than N.
  bool saturate = false;
  /// Before building the chain, look for a nonzero coefficient among the
  /// words of length <= probe_depth (shortlex order). Skipped when saturating
  /// or recording the chain.
  std::size_t probe_depth = 6;
};

struct ZeronessReport {
  bool is_zero = true;
  bool saturated = true;
  std::size_t saturation_depth = 0;
  std::optional<Word> witness;
  std::size_t generator_count = 0;
  /// Accumulated configurations Delta_w alpha, in shortlex order of w.
  std::vector<std::pair<Word, Polynomial>> generators;
  /// chain[n] is a basis of I_n when record_chain is set.
  std::vector<GroebnerBasis> chain;
};

/// Breadth-first saturation of the ideal chain I_0 <= I_1 <= ... with an
/// incremental Groebner basis. Candidates are tested in shortlex order
/// against the ideal of the configurations kept before them, so the
/// shortlex-least nonzero word is always a kept one.
ZeronessReport zeroness(const ShuffleAutomaton& a, const ZeronessOptions& options = {});
ZeronessReport equal(const ShuffleAutomaton& a, const ShuffleAutomaton& b, const ZeronessOptions& options = {});

/// Output polynomial identically zero.
bool structurally_zero(const ShuffleAutomaton& a);
bool structurally_zero(const PolynomialSystem& s);

enum class Property {
  Zeroness,
  Equivalence,
  Independence,
  Linearity,
  Analyticity,
  Stationarity,
  TimeInvariance,
  Support,
};

std::string property_name(Property p);

struct AnalysisReport {
  Property property = Property::Zeroness;
  bool verdict = true;
  std::vector<std::uint32_t> inputs;
  std::vector<ZeronessReport> reports;
  /// A word on which the property visibly fails.
  std::optional<Word> witness;
  /// For commutativity: a word obtained from the witness by permuting
  /// letters whose coefficient differs.
  std::optional<Word> partner;
  std::string detail;

  std::size_t saturation_depth() const;
};

AnalysisReport support_subset(const ShuffleAutomaton& a, const CommutativeRecognizer& r,
                              const ZeronessOptions& options = {});
AnalysisReport support_subset(const ShuffleAutomaton& a, const CountConstraint& c,
                              const ZeronessOptions& options = {});

/// Invariance of the coefficients under swapping adjacent letters when at
/// least one of them lies in gamma. Runs the swap and rotation equalities
/// for letters of gamma; when gamma is a proper nonempty subset of the
/// alphabet it also checks each mixed pair (g in gamma, x outside) through
/// a marker letter whose derivation is the commutator of the two.
AnalysisReport commutative_in(const ShuffleAutomaton& a, const std::set<std::uint32_t>& gamma,
                              const ZeronessOptions& options = {});

/// right_derivative(A, a0) is zero.
AnalysisReport stationary(const ShuffleAutomaton& a, const ZeronessOptions& options = {});
/// Support avoids a0.
AnalysisReport time_invariant(const ShuffleAutomaton& a, const ZeronessOptions& options = {});

struct Query {
  Property property = Property::Zeroness;
  /// 1-based input indices, for independence, linearity and analyticity.
  std::vector<std::uint32_t> inputs;
  /// Equivalence only.
  std::optional<ShuffleAutomaton> other;
  /// Support only.
  std::optional<CountConstraint> constraint;
};

/// Dispatches a query on an automaton. Throws ValidationError when an input
/// index lies outside 1..m (m = alphabet size - 1).
AnalysisReport analyze(const ShuffleAutomaton& a, const Query& query, const ZeronessOptions& options = {});
AnalysisReport analyze(const PolynomialSystem& s, const Query& query, const ZeronessOptions& options = {});

/// Verdict word for the property: "zero"/"nonzero", "independent"/"dependent", ...
std::string verdict_word(Property p, bool verdict);

/// Text report (first line `verdict=...`) and key-value report.
std::string format_text(const AnalysisReport& r);
std::string format_kv(const AnalysisReport& r);

}  // namespace fliess
