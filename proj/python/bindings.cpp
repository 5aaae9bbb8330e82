#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fliess/automaton.hpp"
#include "fliess/commlang.hpp"
#include "fliess/decide.hpp"
#include "fliess/error.hpp"
#include "fliess/oracle.hpp"
#include "fliess/system.hpp"

namespace py = pybind11;
using namespace fliess;

namespace {

// Rationals cross the boundary as strings; the Python layer wraps them in Fraction.
std::vector<PowerSeries> to_series(const std::vector<std::vector<std::string>>& inputs, std::size_t order) {
  std::vector<PowerSeries> out;
  for (const auto& coefficients : inputs) {
    std::vector<Rational> c;
    for (const std::string& s : coefficients) c.push_back(parse_rational(s));
    if (c.size() > order + 1) throw ValidationError("input series longer than the order");
    out.push_back(PowerSeries(std::move(c)).truncated(order));
  }
  return out;
}

std::vector<std::string> from_series(const PowerSeries& s) {
  std::vector<std::string> out;
  for (const Rational& c : s.coefficients()) out.push_back(to_string(c));
  return out;
}

py::dict report_dict(const AnalysisReport& r) {
  py::dict d;
  d["property"] = property_name(r.property);
  d["verdict"] = r.verdict;
  d["label"] = verdict_word(r.property, r.verdict);
  d["inputs"] = r.inputs;
  d["witness"] = r.witness ? py::cast(to_string(*r.witness)) : py::none();
  d["partner"] = r.partner ? py::cast(to_string(*r.partner)) : py::none();
  d["saturation_depth"] = r.saturation_depth();
  return d;
}

py::dict zeroness_dict(const ZeronessReport& r) {
  py::dict d;
  d["is_zero"] = r.is_zero;
  d["saturation_depth"] = r.saturation_depth;
  d["witness"] = r.witness ? py::cast(to_string(*r.witness)) : py::none();
  d["generator_count"] = r.generator_count;
  return d;
}

Property property_from(const std::string& name) {
  static const std::vector<std::pair<std::string, Property>> table = {
      {"zero", Property::Zeroness},          {"independent", Property::Independence},
      {"linear", Property::Linearity},       {"analytic", Property::Analyticity},
      {"stationary", Property::Stationarity}, {"time-invariant", Property::TimeInvariance},
  };
  for (const auto& [key, p] : table) {
    if (key == name) return p;
  }
  throw ValidationError("unknown property '" + name + "'");
}

}  // namespace

PYBIND11_MODULE(_fliess, m) {
  m.doc() = "Exact analysis of polynomial control systems through shuffle automata.";

  // Translators run newest first, so the base class goes first.
  const auto& base = py::register_exception<Error>(m, "Error", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<ValidationError>(m, "ValidationError", base.ptr());

  py::class_<ShuffleAutomaton>(m, "Automaton")
      .def_property_readonly("alphabet_size", &ShuffleAutomaton::alphabet_size)
      .def_property_readonly("nonterminals", &ShuffleAutomaton::nonterminals)
      .def("__str__", &print_automaton);

  py::class_<PolynomialSystem>(m, "System")
      .def_readonly("inputs", &PolynomialSystem::inputs)
      .def_readonly("states", &PolynomialSystem::states)
      .def("__str__", &print_system);

  m.def("parse_automaton", [](const std::string& text) { return parse_automaton(text); });
  m.def("parse_system", [](const std::string& text) { return parse_system(text); });
  m.def("system_to_automaton", &system_to_automaton);
  m.def("automaton_to_system", &automaton_to_system);

  m.def("coeff", [](const ShuffleAutomaton& a, const std::string& word) {
    return to_string(coeff(a, parse_word(word)));
  });
  m.def("oracle", [](const ShuffleAutomaton& a, std::size_t depth) {
    std::vector<std::pair<std::string, std::string>> out;
    const TruncatedSeries series = truncate(a, depth);
    for (const auto& [w, c] : series.table()) out.emplace_back(to_string(w), to_string(c));
    return out;
  });

  m.def("shuffle", &shuffle);
  m.def("sum", &sum);
  m.def("scale", [](const std::string& c, const ShuffleAutomaton& a) { return scale(parse_rational(c), a); });
  m.def("left_derivative", [](const ShuffleAutomaton& a, std::uint32_t j) { return left_derivative(a, Letter{j}); });
  m.def("right_derivative", [](const ShuffleAutomaton& a, std::uint32_t j) { return right_derivative(a, Letter{j}); });
  m.def("word_automaton", [](std::size_t alphabet, const std::string& word, const std::string& c) {
    return word_automaton(alphabet, parse_word(word), parse_rational(c));
  }, py::arg("alphabet"), py::arg("word"), py::arg("c") = "1");
  m.def("restrict", [](const ShuffleAutomaton& a, const std::string& lang) {
    return restrict_automaton(a, compile_constraint(parse_constraint(lang, a.alphabet_size()), a.alphabet_size()));
  });

  m.def("zeroness", [](const ShuffleAutomaton& a) { return zeroness_dict(zeroness(a)); });
  m.def("equal", [](const ShuffleAutomaton& a, const ShuffleAutomaton& b) { return zeroness_dict(equal(a, b)); });
  m.def("check", [](const ShuffleAutomaton& a, const std::string& property, std::vector<std::uint32_t> inputs) {
    Query q;
    q.property = property_from(property);
    q.inputs = std::move(inputs);
    return report_dict(analyze(a, q));
  }, py::arg("automaton"), py::arg("property"), py::arg("inputs") = std::vector<std::uint32_t>{});
  m.def("support_subset", [](const ShuffleAutomaton& a, const std::string& lang) {
    return report_dict(support_subset(a, parse_constraint(lang, a.alphabet_size())));
  });

  m.def("simulate", [](const PolynomialSystem& s, const std::vector<std::vector<std::string>>& u, std::size_t order) {
    return from_series(simulate(s, to_series(u, order), order));
  });
  m.def("fliess_eval", [](const ShuffleAutomaton& a, const std::vector<std::vector<std::string>>& u,
                          std::size_t order) { return from_series(fliess_eval(a, to_series(u, order), order)); });
}
