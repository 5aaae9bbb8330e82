#include "fliess/oracle.hpp"

#include <functional>
#include <sstream>
#include <span>
#include <vector>

namespace fliess {

Rational TruncatedSeries::at(const Word& w) const {
  if (w.size() > depth_) throw ValidationError("word " + to_string(w) + " exceeds the truncation depth");
  auto it = table_.find(w);
  return it == table_.end() ? Rational(0) : it->second;
}

void TruncatedSeries::set(const Word& w, const Rational& value) {
  if (w.size() > depth_) throw ValidationError("word " + to_string(w) + " exceeds the truncation depth");
  for (Letter a : w) {
    if (a.index >= alphabet_size_) throw ValidationError("letter " + to_string(a) + " outside the alphabet");
  }
  if (value == 0) {
    table_.erase(w);
  } else {
    table_[w] = value;
  }
}

TruncatedSeries TruncatedSeries::truncated(std::size_t depth) const {
  TruncatedSeries out(alphabet_size_, std::min(depth, depth_));
  for (const auto& [w, c] : table_) {
    if (w.size() <= out.depth_) out.table_.emplace(w, c);
  }
  return out;
}

namespace {

Polynomial up_to_degree(const Polynomial& p, std::size_t degree) {
  if (p.total_degree() <= degree) return p;
  Polynomial out;
  for (const auto& [m, c] : p.terms()) {
    if (m.degree() <= degree) out.add_term(m, c);
  }
  return out;
}

}  // namespace

// Configurations are written in coordinates Y_i = X_i - O(X_i), so a
// coefficient is a constant term. A derivation lowers the Y-degree of a
// term by at most one, hence with r letters left only terms of degree <= r
// can still reach the constant term and the rest is dropped.
TruncatedSeries truncate(const ShuffleAutomaton& a, std::size_t depth) {
  TruncatedSeries out(a.alphabet_size(), depth);
  std::vector<Polynomial> shift;
  for (std::size_t i = 0; i < a.size(); ++i) {
    shift.push_back(Polynomial::variable(static_cast<Var>(i)) + Polynomial(a.output()[i]));
  }
  auto centred = [&](const Polynomial& p) {
    return p.evaluate_in<Polynomial>(std::span<const Polynomial>(shift), Polynomial(1));
  };
  std::vector<std::vector<Polynomial>> delta;
  for (const auto& row : a.transitions()) {
    delta.emplace_back();
    for (const auto& p : row) delta.back().push_back(centred(p));
  }
  const ShuffleAutomaton moved(a.alphabet_size(), a.nonterminals(), centred(a.initial()),
                               std::vector<Rational>(a.size(), Rational(0)), std::move(delta));

  std::map<Polynomial, std::vector<Polynomial>, PolynomialLess> children;
  std::function<void(const Polynomial&, Word&)> visit = [&](const Polynomial& cfg, Word& w) {
    if (cfg.is_zero()) return;
    out.set(w, cfg.constant_term());
    if (w.size() == depth) return;
    auto kids = children.find(cfg);
    if (kids == children.end()) {
      std::vector<Polynomial> derived;
      derived.reserve(a.alphabet_size());
      for (std::uint32_t letter = 0; letter < a.alphabet_size(); ++letter) {
        derived.push_back(derive_config(moved, Letter{letter}, cfg));
      }
      kids = children.emplace(cfg, std::move(derived)).first;
    }
    const std::size_t left = depth - w.size() - 1;
    for (std::uint32_t letter = 0; letter < a.alphabet_size(); ++letter) {
      const Polynomial next = up_to_degree(kids->second[letter], left);
      w.push_back(Letter{letter});
      visit(next, w);
      w.pop_back();
    }
  };
  Word w;
  visit(up_to_degree(moved.initial(), depth), w);
  return out;
}

TruncatedSeries operator+(const TruncatedSeries& f, const TruncatedSeries& g) {
  if (f.alphabet_size() != g.alphabet_size()) throw ValidationError("alphabet mismatch");
  TruncatedSeries out = f.truncated(std::min(f.depth(), g.depth()));
  for (const auto& [w, c] : g.table()) {
    if (w.size() <= out.depth()) out.set(w, out.at(w) + c);
  }
  return out;
}

TruncatedSeries operator*(const Rational& c, const TruncatedSeries& f) {
  TruncatedSeries out(f.alphabet_size(), f.depth());
  for (const auto& [w, v] : f.table()) out.set(w, c * v);
  return out;
}

TruncatedSeries shuffle_trunc(const TruncatedSeries& f, const TruncatedSeries& g) {
  if (f.alphabet_size() != g.alphabet_size()) throw ValidationError("alphabet mismatch in shuffle");
  const std::size_t depth = std::min(f.depth(), g.depth());
  TruncatedSeries out(f.alphabet_size(), depth);

  // coefficient of `rest` in (d_u f) sh (d_v g)
  std::function<Rational(Word&, Word&, std::size_t, const Word&)> step =
      [&](Word& u, Word& v, std::size_t pos, const Word& w) -> Rational {
    if (pos == w.size()) return f.at(u) * g.at(v);
    Rational total(0);
    u.push_back(w[pos]);
    total += step(u, v, pos + 1, w);
    u.pop_back();
    v.push_back(w[pos]);
    total += step(u, v, pos + 1, w);
    v.pop_back();
    return total;
  };

  for (const Word& w : words_up_to(f.alphabet_size(), depth)) {
    Word u;
    Word v;
    out.set(w, step(u, v, 0, w));
  }
  return out;
}

TruncatedSeries trunc_derivative(const TruncatedSeries& f, Side side, Letter a) {
  if (f.depth() == 0) throw ValidationError("cannot differentiate a depth-0 table");
  if (a.index >= f.alphabet_size()) throw ValidationError("letter outside the alphabet");
  TruncatedSeries out(f.alphabet_size(), f.depth() - 1);
  for (const auto& [w, c] : f.table()) {
    if (w.empty()) continue;
    if (side == Side::Left && w.front() == a) out.set(Word(w.begin() + 1, w.end()), c);
    if (side == Side::Right && w.back() == a) out.set(Word(w.begin(), w.end() - 1), c);
  }
  return out;
}

TruncatedSeries restrict_trunc(const TruncatedSeries& f, const CommutativeRecognizer& r) {
  TruncatedSeries out(f.alphabet_size(), f.depth());
  for (const auto& [w, c] : f.table()) {
    if (r.member(w)) out.set(w, c);
  }
  return out;
}

bool naive_zero(const TruncatedSeries& f) { return f.is_zero(); }

bool naive_equal(const TruncatedSeries& f, const TruncatedSeries& g) {
  const std::size_t depth = std::min(f.depth(), g.depth());
  return f.truncated(depth).table() == g.truncated(depth).table();
}

bool naive_support_subset(const TruncatedSeries& f, const CommutativeRecognizer& r) {
  for (const auto& [w, c] : f.table()) {
    if (!r.member(w)) return false;
  }
  return true;
}

bool naive_commutative_in(const TruncatedSeries& f, const std::set<std::uint32_t>& gamma) {
  for (const Word& w : words_up_to(f.alphabet_size(), f.depth())) {
    const Rational value = f.at(w);
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
      if (w[i] == w[i + 1]) continue;
      if (!gamma.count(w[i].index) && !gamma.count(w[i + 1].index)) continue;
      Word swapped = w;
      std::swap(swapped[i], swapped[i + 1]);
      if (f.at(swapped) != value) return false;
    }
  }
  return true;
}

bool naive_stationary(const TruncatedSeries& f) {
  for (const auto& [w, c] : f.table()) {
    if (!w.empty() && w.back() == Letter{0}) return false;
  }
  return true;
}

std::string dump(const TruncatedSeries& f) {
  std::ostringstream out;
  for (const auto& [w, c] : f.table()) out << to_string(w) << '\t' << to_string(c) << '\n';
  return out.str();
}

}  // namespace fliess
