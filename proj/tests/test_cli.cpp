#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "doctest.h"
#include "fliess/automaton.hpp"
#include "fliess/oracle.hpp"

namespace fs = std::filesystem;

namespace {

const fs::path data_dir = FLIESS_TEST_DATA;

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

/// Runs the CLI from the data directory so that paths in messages are stable.
Result run(const std::vector<std::string>& args) {
  const fs::path previous = fs::current_path();
  fs::current_path(data_dir);
  std::ostringstream out;
  std::ostringstream err;
  Result r;
  r.code = fliess::cli::run(args, out, err);
  fs::current_path(previous);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::vector<std::string> split(const std::string& text) {
  std::istringstream in(text);
  std::vector<std::string> out;
  for (std::string item; in >> item;) out.push_back(item);
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(' ');
  const auto e = s.find_last_not_of(' ');
  return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

struct Case {
  std::string name;
  int code = 0;
  std::vector<std::string> args;
};

std::vector<Case> golden_cases() {
  std::ifstream in(data_dir / "golden" / "cases.txt");
  std::vector<Case> cases;
  for (std::string line; std::getline(in, line);) {
    if (line.empty() || line[0] == '#') continue;
    const auto a = line.find('|');
    const auto b = line.find('|', a + 1);
    cases.push_back({trim(line.substr(0, a)), std::stoi(line.substr(a + 1, b - a - 1)), split(line.substr(b + 1))});
  }
  return cases;
}

std::string rendered(const Result& r) { return r.out + (r.err.empty() ? "" : "--- stderr\n" + r.err); }

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("golden files") {
  const std::vector<Case> cases = golden_cases();
  REQUIRE(cases.size() > 20);
  for (const Case& c : cases) {
    CAPTURE(c.name);
    const Result r = run(c.args);
    CHECK(r.code == c.code);
    CHECK(rendered(r) == slurp(data_dir / "golden" / (c.name + ".out")));
  }
}

TEST_CASE("identical invocations give identical output") {
  for (const Case& c : golden_cases()) {
    CAPTURE(c.name);
    const Result a = run(c.args);
    const Result b = run(c.args);
    CHECK(a.code == b.code);
    CHECK(a.out == b.out);
    CHECK(a.err == b.err);
  }
}

TEST_CASE("documented examples") {
  const Result zero = run({"check", "zero", "zero_sys.txt"});
  CHECK(zero.code == 0);
  CHECK(zero.out.rfind("verdict=zero\n", 0) == 0);
  const Result c = run({"coeff", "exp_aut.txt", "--word", "a0a0"});
  CHECK(c.code == 0);
  CHECK(c.out == "2\n");
  CHECK(run({"check", "equal", "scale_sys.txt", "scale_sys.txt"}).code == 0);
}

TEST_CASE("restrict writes a loadable automaton") {
  const fs::path out = fs::temp_directory_path() / "fliess_restrict_test.txt";
  const Result r = run({"restrict", "exp_aut.txt", "--lang", "count(a0) % 2 == 0", "-o", out.string()});
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  const fliess::ShuffleAutomaton a = fliess::parse_automaton(slurp(out));
  const Result dump = run({"oracle", out.string(), "--depth", "4"});
  CHECK(dump.code == 0);
  CHECK(dump.out == "eps\t1\na0a0\t2\na0a0a0a0\t24\n");
  CHECK(fliess::coeff(a, fliess::parse_word("a0a0a0")) == 0);
  fs::remove(out);
}

TEST_CASE("convert round trips through files") {
  const fs::path out = fs::temp_directory_path() / "fliess_convert_test.txt";
  REQUIRE(run({"convert", "product_sys.txt", "--to", "automaton", "-o", out.string()}).code == 0);
  CHECK(run({"check", "equal", "product_sys.txt", out.string()}).code == 0);
  const Result dump = run({"oracle", out.string(), "--depth", "3"});
  CHECK(dump.out == run({"oracle", "product_sys.txt", "--depth", "3"}).out);
  fs::remove(out);
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run({}).code == 2);
  CHECK(run({"check"}).code == 2);
  CHECK(run({"check", "zero"}).code == 2);
  CHECK(run({"check", "independent", "scale_sys.txt"}).code == 2);
  CHECK(run({"check", "independent", "scale_sys.txt", "--inputs", "one"}).code == 2);
  CHECK(run({"check", "zero", "zero_sys.txt", "--format", "xml"}).code == 2);
  CHECK(run({"convert", "scale_sys.txt", "--to", "picture"}).code == 2);
  CHECK(run({"simulate", "scale_sys.txt", "--order", "3", "--input", "u2=[1]"}).code == 2);
  CHECK(run({"simulate", "scale_sys.txt", "--order", "3", "--input", "u1=[1]", "--input", "u1=[2]"}).code == 2);
}

TEST_CASE("help exits with 0") {
  const Result r = run({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("check") != std::string::npos);
}

}  // TEST_SUITE
