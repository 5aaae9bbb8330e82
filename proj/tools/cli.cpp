#include "cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>

#include "fliess/automaton.hpp"
#include "fliess/commlang.hpp"
#include "fliess/decide.hpp"
#include "fliess/error.hpp"
#include "fliess/oracle.hpp"
#include "fliess/system.hpp"

namespace fliess::cli {

namespace {

// Input errors carrying the file they came from.
struct InputError {
  std::string message;
};

struct Model {
  std::optional<PolynomialSystem> system;
  ShuffleAutomaton automaton;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError{path + ": cannot open file"};
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// First word of the file after blanks and # comments.
std::string header_keyword(const std::string& text) {
  std::size_t i = 0;
  while (i < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
    } else if (text[i] == '#') {
      while (i < text.size() && text[i] != '\n') ++i;
    } else {
      break;
    }
  }
  std::size_t j = i;
  while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_')) ++j;
  return text.substr(i, j - i);
}

template <class F>
auto with_path(const std::string& path, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ParseError& e) {
    throw InputError{path + ":" + e.what()};
  } catch (const Error& e) {
    throw InputError{path + ": " + e.what()};
  }
}

Model load(const std::string& path) {
  const std::string text = read_file(path);
  return with_path(path, [&]() -> Model {
    if (header_keyword(text) == "automaton") return Model{std::nullopt, parse_automaton(text)};
    PolynomialSystem s = parse_system(text);
    ShuffleAutomaton a = system_to_automaton(s);
    return Model{std::move(s), std::move(a)};
  });
}

std::vector<std::uint32_t> parse_inputs(const std::string& text) {
  std::vector<std::uint32_t> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos || item.size() > 9) {
      throw InputError{"--inputs: expected a comma-separated list of input indices, got '" + text + "'"};
    }
    out.push_back(static_cast<std::uint32_t>(std::stoul(item)));
  }
  return out;
}

std::vector<PowerSeries> parse_series_inputs(const std::vector<std::string>& args, std::size_t m,
                                             std::size_t order) {
  std::vector<PowerSeries> u(m, PowerSeries(order));
  std::vector<bool> seen(m, false);
  for (const std::string& arg : args) {
    const auto eq = arg.find('=');
    const std::string name = arg.substr(0, eq);
    if (eq == std::string::npos || name.size() < 2 || name[0] != 'u' ||
        name.find_first_not_of("0123456789", 1) != std::string::npos || name.size() > 9) {
      throw InputError{"--input: expected u<j>=[c0,c1,...], got '" + arg + "'"};
    }
    const auto j = std::stoul(name.substr(1));
    if (j < 1 || j > m) {
      throw InputError{"--input: " + name + " out of range 1.." + std::to_string(m)};
    }
    if (seen[j - 1]) throw InputError{"--input: " + name + " given twice"};
    seen[j - 1] = true;
    u[j - 1] = with_path("--input " + name, [&] { return parse_power_series(arg.substr(eq + 1), order); });
  }
  return u;
}

struct Options {
  std::string format = "text";
  std::vector<std::string> files;
  std::string inputs;
  std::string word;
  std::string lang;
  std::string to;
  std::string output_path;
  std::size_t order = 0;
  std::size_t depth = 0;
  std::vector<std::string> series;
};

void emit(std::ostream& out, const Options& o, const std::string& key, const std::string& value) {
  if (o.format == "kv") {
    out << key << '=' << value << '\n';
  } else {
    out << value << '\n';
  }
}

int report(std::ostream& out, const Options& o, const AnalysisReport& r) {
  out << (o.format == "kv" ? format_kv(r) : format_text(r));
  return r.verdict ? 0 : 1;
}

int run_check(Property p, const Options& o, std::ostream& out) {
  const Model f = load(o.files.at(0));
  Query q;
  q.property = p;
  if (p == Property::Equivalence) {
    if (o.files.size() != 2) throw InputError{"check equal needs two files"};
    q.other = load(o.files[1]).automaton;
  }
  if (p == Property::Independence || p == Property::Linearity || p == Property::Analyticity) {
    q.inputs = parse_inputs(o.inputs);
    const std::size_t m = f.automaton.alphabet_size() - 1;
    for (std::uint32_t j : q.inputs) {
      if (j < 1 || j > m) {
        throw InputError{"--inputs: input u" + std::to_string(j) + " out of range 1.." + std::to_string(m)};
      }
    }
  }
  if (p == Property::Support) {
    q.constraint = with_path("--lang", [&] { return parse_constraint(o.lang, f.automaton.alphabet_size()); });
  }
  const AnalysisReport r = with_path(o.files[0], [&] { return analyze(f.automaton, q); });
  return report(out, o, r);
}

void write_output(const std::string& text, const Options& o, std::ostream& out) {
  if (o.output_path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(o.output_path, std::ios::binary);
  if (!file) throw InputError{o.output_path + ": cannot write file"};
  file << text;
}

void add_format(CLI::App* app, Options& o) {
  app->add_option("--format", o.format, "output format")->check(CLI::IsMember({"text", "kv"}));
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Decision procedures and simulation for polynomial control systems and shuffle automata", "fliess"};
  app.require_subcommand(1);
  Options o;
  std::function<int()> action;

  CLI::App* check = app.add_subcommand("check", "decide a property")->require_subcommand(1);
  const std::vector<std::tuple<std::string, Property, std::string>> checks = {
      {"zero", Property::Zeroness, "the series is zero"},
      {"equal", Property::Equivalence, "two files have the same series"},
      {"independent", Property::Independence, "output independent of inputs J"},
      {"linear", Property::Linearity, "output linear in inputs J"},
      {"analytic", Property::Analyticity, "output analytic in inputs J"},
      {"stationary", Property::Stationarity, "output invariant under time shifts"},
      {"time-invariant", Property::TimeInvariance, "output does not depend on the drift letter"},
      {"support", Property::Support, "support contained in the language of --lang"},
  };
  for (const auto& [name, property, help] : checks) {
    CLI::App* sub = check->add_subcommand(name, help);
    const std::size_t files = property == Property::Equivalence ? 2 : 1;
    sub->add_option("files", o.files, files == 2 ? "F G" : "F")->required()->expected(static_cast<int>(files));
    if (property == Property::Independence || property == Property::Linearity || property == Property::Analyticity) {
      sub->add_option("--inputs", o.inputs, "input indices, e.g. 1,3")->required();
    }
    if (property == Property::Support) sub->add_option("--lang", o.lang, "counting constraint")->required();
    add_format(sub, o);
    sub->callback([&o, &out, &action, property = property] {
      action = [&o, &out, property] { return run_check(property, o, out); };
    });
  }

  CLI::App* coeff_cmd = app.add_subcommand("coeff", "coefficient of a word");
  coeff_cmd->add_option("file", o.files, "F")->required()->expected(1);
  coeff_cmd->add_option("--word", o.word, "word such as a1a2 or eps")->required();
  add_format(coeff_cmd, o);
  coeff_cmd->callback([&] {
    action = [&] {
      const Model f = load(o.files[0]);
      const Word w = with_path("--word", [&] { return parse_word(o.word); });
      for (Letter a : w) {
        if (a.index >= f.automaton.alphabet_size()) throw InputError{"--word: letter " + to_string(a) + " outside the alphabet"};
      }
      emit(out, o, "coeff", to_string(coeff(f.automaton, w)));
      return 0;
    };
  });

  for (const std::string name : {"simulate", "fliess"}) {
    CLI::App* sub = app.add_subcommand(name, name == "simulate" ? "truncated output of the system for given inputs"
                                                                 : "truncated Fliess operator for given inputs");
    sub->add_option("file", o.files, "F")->required()->expected(1);
    sub->add_option("--order", o.order, "truncation order")->required();
    sub->add_option("--input", o.series, "u<j>=[c0,c1,...] (exponential convention)");
    add_format(sub, o);
    sub->callback([&o, &out, &action, name] {
      action = [&o, &out, name] {
        const Model f = load(o.files[0]);
        const std::size_t m = f.automaton.alphabet_size() - 1;
        const std::vector<PowerSeries> u = parse_series_inputs(o.series, m, o.order);
        PowerSeries y(o.order);
        if (name == "simulate") {
          const PolynomialSystem s = f.system ? *f.system : automaton_to_system(f.automaton);
          y = simulate(s, u, o.order);
        } else {
          y = fliess_eval(f.automaton, u, o.order);
        }
        emit(out, o, "series", y.to_string());
        return 0;
      };
    });
  }

  CLI::App* convert = app.add_subcommand("convert", "convert between systems and automata");
  convert->add_option("file", o.files, "F")->required()->expected(1);
  convert->add_option("--to", o.to, "target kind")->required()->check(CLI::IsMember({"automaton", "system"}));
  convert->add_option("-o,--output", o.output_path, "output file (default stdout)");
  convert->callback([&] {
    action = [&] {
      const Model f = load(o.files[0]);
      if (o.to == "automaton") {
        write_output(print_automaton(f.automaton), o, out);
      } else {
        write_output(print_system(f.system ? *f.system : automaton_to_system(f.automaton)), o, out);
      }
      return 0;
    };
  });

  CLI::App* oracle_cmd = app.add_subcommand("oracle", "all nonzero coefficients up to a word length");
  oracle_cmd->add_option("file", o.files, "F")->required()->expected(1);
  oracle_cmd->add_option("--depth", o.depth, "maximal word length")->required();
  oracle_cmd->callback([&] {
    action = [&] {
      const Model f = load(o.files[0]);
      out << dump(truncate(f.automaton, o.depth));
      return 0;
    };
  });

  CLI::App* restrict_cmd = app.add_subcommand("restrict", "restrict the support to a counting language");
  restrict_cmd->add_option("file", o.files, "F")->required()->expected(1);
  restrict_cmd->add_option("--lang", o.lang, "counting constraint, e.g. \"count(a1) == 1\"")->required();
  restrict_cmd->add_option("-o,--output", o.output_path, "output file (default stdout)");
  restrict_cmd->callback([&] {
    action = [&] {
      const Model f = load(o.files[0]);
      const std::size_t n = f.automaton.alphabet_size();
      const CountConstraint c = with_path("--lang", [&] { return parse_constraint(o.lang, n); });
      const CommutativeRecognizer r = with_path("--lang", [&] { return compile_constraint(c, n); });
      write_output(print_automaton(restrict_automaton(f.automaton, r)), o, out);
      return 0;
    };
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    return action ? action() : 2;
  } catch (const InputError& e) {
    err << "error: " << e.message << '\n';
    return 2;
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << '\n';
    return 3;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace fliess::cli
