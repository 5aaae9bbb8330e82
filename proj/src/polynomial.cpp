#include "fliess/polynomial.hpp"

#include <algorithm>
#include <sstream>

namespace fliess {

// ---------------------------------------------------------------- Monomial

Monomial Monomial::variable(Var v, unsigned exponent) {
  Monomial m;
  if (exponent > 0) {
    m.factors_.emplace_back(v, exponent);
    m.degree_ = exponent;
  }
  return m;
}

Monomial Monomial::from_factors(std::vector<Factor> factors) {
  std::sort(factors.begin(), factors.end());
  Monomial m;
  for (const auto& [v, e] : factors) {
    if (e == 0) continue;
    if (!m.factors_.empty() && m.factors_.back().first == v) {
      m.factors_.back().second += e;
    } else {
      m.factors_.emplace_back(v, e);
    }
    m.degree_ += e;
  }
  return m;
}

unsigned Monomial::exponent(Var v) const {
  auto it = std::lower_bound(factors_.begin(), factors_.end(), Factor{v, 0});
  return (it != factors_.end() && it->first == v) ? it->second : 0;
}

std::optional<Var> Monomial::max_variable() const {
  if (factors_.empty()) return std::nullopt;
  return factors_.back().first;
}

bool Monomial::divides(const Monomial& other) const {
  if (degree_ > other.degree_) return false;
  auto it = other.factors_.begin();
  for (const auto& [v, e] : factors_) {
    while (it != other.factors_.end() && it->first < v) ++it;
    if (it == other.factors_.end() || it->first != v || it->second < e) return false;
  }
  return true;
}

bool Monomial::coprime(const Monomial& other) const {
  auto a = factors_.begin();
  auto b = other.factors_.begin();
  while (a != factors_.end() && b != other.factors_.end()) {
    if (a->first == b->first) return false;
    if (a->first < b->first) {
      ++a;
    } else {
      ++b;
    }
  }
  return true;
}

Monomial Monomial::quotient(const Monomial& divisor) const {
  Monomial out;
  auto d = divisor.factors_.begin();
  for (const auto& [v, e] : factors_) {
    unsigned sub = 0;
    if (d != divisor.factors_.end() && d->first == v) {
      sub = d->second;
      ++d;
    }
    if (e > sub) {
      out.factors_.emplace_back(v, e - sub);
      out.degree_ += e - sub;
    }
  }
  return out;
}

Monomial Monomial::lcm(const Monomial& other) const {
  Monomial out;
  auto a = factors_.begin();
  auto b = other.factors_.begin();
  while (a != factors_.end() || b != other.factors_.end()) {
    Factor f;
    if (b == other.factors_.end() || (a != factors_.end() && a->first < b->first)) {
      f = *a++;
    } else if (a == factors_.end() || b->first < a->first) {
      f = *b++;
    } else {
      f = {a->first, std::max(a->second, b->second)};
      ++a;
      ++b;
    }
    out.factors_.push_back(f);
    out.degree_ += f.second;
  }
  return out;
}

Monomial Monomial::without_one(Var v) const {
  Monomial out = *this;
  auto it = std::lower_bound(out.factors_.begin(), out.factors_.end(), Factor{v, 0});
  if (it == out.factors_.end() || it->first != v) throw InternalError("without_one: variable absent");
  if (--it->second == 0) out.factors_.erase(it);
  --out.degree_;
  return out;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial out;
  out.factors_.reserve(a.factors_.size() + b.factors_.size());
  auto x = a.factors_.begin();
  auto y = b.factors_.begin();
  while (x != a.factors_.end() || y != b.factors_.end()) {
    if (y == b.factors_.end() || (x != a.factors_.end() && x->first < y->first)) {
      out.factors_.push_back(*x++);
    } else if (x == a.factors_.end() || y->first < x->first) {
      out.factors_.push_back(*y++);
    } else {
      out.factors_.emplace_back(x->first, x->second + y->second);
      ++x;
      ++y;
    }
  }
  out.degree_ = a.degree_ + b.degree_;
  return out;
}

int grevlex_compare(const Monomial& a, const Monomial& b) {
  if (a.degree() != b.degree()) return a.degree() > b.degree() ? 1 : -1;
  const auto& fa = a.factors();
  const auto& fb = b.factors();
  auto i = fa.rbegin();
  auto j = fb.rbegin();
  while (i != fa.rend() || j != fb.rend()) {
    if (j == fb.rend() || (i != fa.rend() && i->first > j->first)) return -1;
    if (i == fa.rend() || j->first > i->first) return 1;
    if (i->second != j->second) return i->second < j->second ? 1 : -1;
    ++i;
    ++j;
  }
  return 0;
}

bool GrevlexGreater::operator()(const Monomial& a, const Monomial& b) const {
  return grevlex_compare(a, b) > 0;
}

// -------------------------------------------------------------- Polynomial

Polynomial::Polynomial(const Rational& constant) {
  if (constant != 0) terms_.emplace(Monomial(), constant);
}

Polynomial Polynomial::variable(Var v) { return term(Rational(1), Monomial::variable(v)); }

Polynomial Polynomial::term(const Rational& coefficient, Monomial monomial) {
  Polynomial p;
  if (coefficient != 0) p.terms_.emplace(std::move(monomial), coefficient);
  return p;
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

Rational Polynomial::constant_term() const { return coefficient(Monomial()); }

Rational Polynomial::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

const Monomial& Polynomial::leading_monomial() const {
  if (terms_.empty()) throw InternalError("leading monomial of the zero polynomial");
  return terms_.begin()->first;
}

const Rational& Polynomial::leading_coefficient() const {
  if (terms_.empty()) throw InternalError("leading coefficient of the zero polynomial");
  return terms_.begin()->second;
}

unsigned Polynomial::total_degree() const {
  // grevlex is graded, so the leading term has maximal degree
  return terms_.empty() ? 0 : terms_.begin()->first.degree();
}

std::vector<Var> Polynomial::variables() const {
  std::vector<Var> out;
  for (const auto& [m, c] : terms_) {
    for (const auto& [v, e] : m.factors()) out.push_back(v);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::optional<Var> Polynomial::max_variable() const {
  std::optional<Var> best;
  for (const auto& [m, c] : terms_) {
    auto v = m.max_variable();
    if (v && (!best || *v > *best)) best = v;
  }
  return best;
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

std::pair<Monomial, Rational> Polynomial::pop_leading_term() {
  if (terms_.empty()) throw InternalError("leading term of the zero polynomial");
  auto node = terms_.extract(terms_.begin());
  return {std::move(node.key()), std::move(node.mapped())};
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  for (const auto& [m, c] : other.terms_) add_term(m, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const Polynomial& other) {
  *this = *this * other;
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& scalar) {
  if (scalar == 0) {
    terms_.clear();
  } else {
    for (auto& [m, c] : terms_) c *= scalar;
  }
  return *this;
}

void Polynomial::add_scaled(const Rational& coefficient, const Monomial& monomial, const Polynomial& other) {
  if (coefficient == 0) return;
  for (const auto& [m, c] : other.terms_) add_term(monomial * m, coefficient * c);
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  Polynomial out;
  for (const auto& [m, c] : a.terms_) out.add_scaled(c, m, b);
  return out;
}

Polynomial operator-(Polynomial a) {
  for (auto& [m, c] : a.terms_) c = -c;
  return a;
}

bool operator==(const Polynomial& a, const Polynomial& b) { return a.terms_ == b.terms_; }

Polynomial Polynomial::pow(unsigned exponent) const {
  Polynomial result(Rational(1));
  Polynomial base = *this;
  while (exponent > 0) {
    if (exponent & 1U) result *= base;
    exponent >>= 1U;
    if (exponent > 0) base *= base;
  }
  return result;
}

Polynomial Polynomial::partial(Var v) const {
  Polynomial out;
  for (const auto& [m, c] : terms_) {
    const unsigned e = m.exponent(v);
    if (e == 0) continue;
    out.add_term(m.without_one(v), c * e);
  }
  return out;
}

Polynomial Polynomial::monic() const {
  if (is_zero()) return *this;
  Polynomial out = *this;
  const Rational inv = 1 / leading_coefficient();
  out *= inv;
  return out;
}

Rational Polynomial::evaluate(std::span<const Rational> point) const {
  Rational total(0);
  for (const auto& [m, c] : terms_) {
    Rational product = c;
    for (const auto& [v, e] : m.factors()) {
      if (v >= point.size()) throw ValidationError("no value for variable " + std::to_string(v));
      product *= fliess::pow(point[v], e);
    }
    total += product;
  }
  return total;
}

Rational Polynomial::evaluate(const std::map<Var, Rational>& point) const {
  Rational total(0);
  for (const auto& [m, c] : terms_) {
    Rational product = c;
    for (const auto& [v, e] : m.factors()) {
      auto it = point.find(v);
      if (it == point.end()) throw ValidationError("no value for variable " + std::to_string(v));
      product *= fliess::pow(it->second, e);
    }
    total += product;
  }
  return total;
}

std::string Polynomial::to_string(std::span<const std::string> names) const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    Rational magnitude = abs(c);
    if (first) {
      if (c < 0) out << '-';
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    first = false;
    bool need_star = false;
    if (magnitude != 1 || m.is_one()) {
      out << fliess::to_string(magnitude);
      need_star = true;
    }
    for (const auto& [v, e] : m.factors()) {
      if (need_star) out << '*';
      if (v < names.size()) {
        out << names[v];
      } else {
        out << "v" << v;
      }
      if (e > 1) out << '^' << e;
      need_star = true;
    }
  }
  return out.str();
}

bool PolynomialLess::operator()(const Polynomial& a, const Polynomial& b) const {
  auto i = a.terms().begin();
  auto j = b.terms().begin();
  for (; i != a.terms().end() && j != b.terms().end(); ++i, ++j) {
    if (int cmp = grevlex_compare(i->first, j->first); cmp != 0) return cmp < 0;
    if (i->second != j->second) return i->second < j->second;
  }
  return i == a.terms().end() && j != b.terms().end();
}

Polynomial partial(const Polynomial& p, std::string_view name, std::span<const std::string> names) {
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] == name) return p.partial(static_cast<Var>(i));
  }
  throw ValidationError("unknown indeterminate '" + std::string(name) + "'");
}

}  // namespace fliess
