// SPDX-License-Identifier: Apache-2.0
#include "carnot/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

namespace carnot {

namespace {

void trim(Polynomial::Exponents& e) {
  while (!e.empty() && e.back() == 0) e.pop_back();
}

unsigned total_degree(const Polynomial::Exponents& e) {
  return std::accumulate(e.begin(), e.end(), 0u);
}

Polynomial::Exponents add_exponents(const Polynomial::Exponents& a, const Polynomial::Exponents& b) {
  Polynomial::Exponents out(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
  return out;
}

}  // namespace

Polynomial::Polynomial(const Rational& c) {
  if (!carnot::is_zero(c)) terms_.emplace(Exponents{}, c);
}

Polynomial Polynomial::variable(std::size_t index) {
  Exponents e(index + 1, 0);
  e[index] = 1;
  return monomial(std::move(e));
}

Polynomial Polynomial::monomial(Exponents exponents, const Rational& c) {
  Polynomial p;
  trim(exponents);
  p.add_term(exponents, c);
  return p;
}

void Polynomial::add_term(const Exponents& e, const Rational& c) {
  if (carnot::is_zero(c)) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (inserted) return;
  it->second += c;
  if (carnot::is_zero(it->second)) terms_.erase(it);
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

Rational Polynomial::constant_term() const { return coefficient({}); }

Rational Polynomial::coefficient(Exponents exponents) const {
  trim(exponents);
  auto it = terms_.find(exponents);
  return it == terms_.end() ? Rational(0) : it->second;
}

unsigned Polynomial::degree() const {
  unsigned d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, total_degree(e));
  return d;
}

std::size_t Polynomial::variable_bound() const {
  std::size_t n = 0;
  for (const auto& [e, c] : terms_) n = std::max(n, e.size());
  return n;
}

Polynomial Polynomial::derivative(std::size_t var) const {
  Polynomial out;
  for (const auto& [e, c] : terms_) {
    if (var >= e.size() || e[var] == 0) continue;
    Exponents d = e;
    Rational k = c * d[var];
    --d[var];
    trim(d);
    out.add_term(d, k);
  }
  return out;
}

Rational Polynomial::evaluate(std::span<const Rational> point) const {
  if (variable_bound() > point.size()) throw DimensionMismatch("evaluation point has too few coordinates");
  Rational sum = 0;
  for (const auto& [e, c] : terms_) {
    Rational t = c;
    for (std::size_t i = 0; i < e.size(); ++i)
      for (std::uint32_t k = 0; k < e[i]; ++k) t *= point[i];
    sum += t;
  }
  return sum;
}

Polynomial Polynomial::compose(std::span<const Polynomial> values) const {
  if (variable_bound() > values.size()) throw DimensionMismatch("composition has too few substitutions");
  // Cache powers per variable; they are reused across terms.
  std::vector<std::vector<Polynomial>> powers(values.size());
  auto power = [&](std::size_t var, std::uint32_t k) -> const Polynomial& {
    auto& cache = powers[var];
    if (cache.empty()) cache.push_back(Polynomial(1));
    while (cache.size() <= k) cache.push_back(cache.back() * values[var]);
    return cache[k];
  };
  Polynomial out;
  for (const auto& [e, c] : terms_) {
    Polynomial t(c);
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] != 0) t *= power(i, e[i]);
    out += t;
  }
  return out;
}

Polynomial Polynomial::pow(unsigned e) const {
  Polynomial result(1);
  Polynomial base = *this;
  while (e != 0) {
    if (e & 1u) result *= base;
    e >>= 1u;
    if (e != 0) base *= base;
  }
  return result;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  Polynomial out;
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) out.add_term(add_exponents(ea, eb), ca * cb);
  return out;
}

Polynomial& Polynomial::operator*=(const Polynomial& o) { return *this = *this * o; }

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (carnot::is_zero(c)) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, k] : terms_) k *= c;
  return *this;
}

Polynomial operator-(Polynomial a) {
  for (auto& [e, k] : a.terms_) k = -k;
  return a;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::vector<std::pair<const Exponents*, const Rational*>> order;
  for (const auto& [e, c] : terms_) order.emplace_back(&e, &c);
  // Highest degree first; within a degree, x1 before x2.
  std::sort(order.begin(), order.end(), [](const auto& l, const auto& r) {
    unsigned dl = total_degree(*l.first), dr = total_degree(*r.first);
    if (dl != dr) return dl > dr;
    return *l.first > *r.first;
  });
  std::ostringstream out;
  bool first = true;
  for (const auto& [ep, cp] : order) {
    const Exponents& e = *ep;
    Rational c = *cp;
    bool negative = sgn(c) < 0;
    if (negative) c = -c;
    if (first)
      out << (negative ? "-" : "");
    else
      out << (negative ? " - " : " + ");
    first = false;
    bool unit = c == 1;
    if (!unit || e.empty()) out << carnot::to_string(c);
    bool need_star = !unit;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (need_star) out << "*";
      out << "x" << (i + 1);
      if (e[i] > 1) out << "^" << e[i];
      need_star = true;
    }
  }
  return out.str();
}

namespace {

class PolyParser {
 public:
  PolyParser(std::string_view text, std::size_t nvars) : text_(text), nvars_(nvars) {}

  Polynomial run() {
    Polynomial p = expression();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw SpecError("column " + std::to_string(pos_ + 1), what + " in polynomial '" + std::string(text_) + "'");
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  mpz_class integer() {
    skip_space();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an integer");
    return mpz_class(std::string(text_.substr(start, pos_ - start)), 10);
  }

  Polynomial expression() {
    Polynomial acc;
    bool negate = false;
    if (accept('-'))
      negate = true;
    else
      accept('+');
    Polynomial t = term();
    acc = negate ? -t : t;
    while (true) {
      if (accept('+'))
        acc += term();
      else if (accept('-'))
        acc -= term();
      else
        break;
    }
    return acc;
  }

  Polynomial term() {
    Polynomial acc = power();
    while (true) {
      if (accept('*')) {
        acc *= power();
      } else if (accept('/')) {
        Polynomial d = power();
        if (!d.is_constant() || d.is_zero()) fail("division by a non-constant or zero polynomial");
        acc *= Rational(1) / d.constant_term();
      } else {
        break;
      }
    }
    return acc;
  }

  Polynomial power() {
    Polynomial base = unary();
    if (accept('^')) {
      mpz_class e = integer();
      if (e > 64) fail("exponent too large");
      base = base.pow(static_cast<unsigned>(e.get_ui()));
    }
    return base;
  }

  Polynomial unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return primary();
  }

  Polynomial primary() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Polynomial inner = expression();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return Polynomial(Rational(integer()));
    if (c == 'x') {
      ++pos_;
      mpz_class idx = integer();
      if (idx < 1 || idx > static_cast<unsigned long>(nvars_))
        fail("variable x" + idx.get_str() + " outside x1..x" + std::to_string(nvars_));
      return Polynomial::variable(idx.get_ui() - 1);
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  std::size_t nvars_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial Polynomial::parse(std::string_view text, std::size_t nvars) { return PolyParser(text, nvars).run(); }

PolyVector coordinate_polynomials(std::size_t n) {
  PolyVector out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(Polynomial::variable(i));
  return out;
}

PolyVector constant_vector(const RatVector& v) {
  PolyVector out;
  out.reserve(v.size());
  for (const auto& q : v) out.emplace_back(q);
  return out;
}

std::vector<Polynomial> monomials_up_to(std::size_t nvars, unsigned max_degree) {
  std::vector<Polynomial> out;
  Polynomial::Exponents e(nvars, 0);
  // Odometer over exponent vectors with bounded total degree.
  auto rec = [&](auto&& self, std::size_t var, unsigned remaining) -> void {
    if (var == nvars) {
      out.push_back(Polynomial::monomial(e));
      return;
    }
    for (unsigned k = 0; k <= remaining; ++k) {
      e[var] = k;
      self(self, var + 1, remaining - k);
    }
    e[var] = 0;
  };
  rec(rec, 0, max_degree);
  std::stable_sort(out.begin(), out.end(),
                   [](const Polynomial& a, const Polynomial& b) { return a.degree() < b.degree(); });
  return out;
}

PolyMap::PolyMap(std::size_t source_dim, PolyVector components)
    : source_dim_(source_dim), components_(std::move(components)) {
  for (std::size_t i = 0; i < components_.size(); ++i)
    if (components_[i].variable_bound() > source_dim_)
      throw DimensionMismatch("component " + std::to_string(i + 1) + " uses a variable beyond x" +
                              std::to_string(source_dim_));
}

PolyMap PolyMap::identity(std::size_t n) { return PolyMap(n, coordinate_polynomials(n)); }

PolyMap PolyMap::linear(const RatMatrix& m) {
  return PolyMap(m.cols(), multiply<Polynomial>(m, coordinate_polynomials(m.cols())));
}

PolyMap PolyMap::constant(std::size_t source_dim, const RatVector& value) {
  return PolyMap(source_dim, constant_vector(value));
}

PolyMap PolyMap::parse(std::size_t source_dim, const std::vector<std::string>& components) {
  PolyVector comps;
  for (std::size_t i = 0; i < components.size(); ++i) {
    try {
      comps.push_back(Polynomial::parse(components[i], source_dim));
    } catch (const SpecError& e) {
      throw SpecError("components[" + std::to_string(i) + "]", e.what());
    }
  }
  return PolyMap(source_dim, std::move(comps));
}

PolyMap PolyMap::after(const PolyMap& inner) const {
  if (inner.target_dim() != source_dim_) throw DimensionMismatch("composition: inner target differs from outer source");
  PolyVector comps;
  comps.reserve(components_.size());
  for (const auto& c : components_) comps.push_back(c.compose(inner.components_));
  return PolyMap(inner.source_dim_, std::move(comps));
}

Polynomial PolyMap::pull_back(const Polynomial& u) const {
  if (u.variable_bound() > target_dim()) throw DimensionMismatch("pull-back of a polynomial in too many variables");
  return u.compose(components_);
}

PolyVector PolyMap::pull_back(const PolyVector& u) const {
  PolyVector out;
  out.reserve(u.size());
  for (const auto& p : u) out.push_back(pull_back(p));
  return out;
}

PolyMatrix PolyMap::pull_back(const PolyMatrix& u) const {
  PolyMatrix out(u.rows(), u.cols());
  for (std::size_t i = 0; i < u.rows(); ++i)
    for (std::size_t j = 0; j < u.cols(); ++j) out(i, j) = pull_back(u(i, j));
  return out;
}

RatVector PolyMap::evaluate(std::span<const Rational> point) const {
  if (point.size() != source_dim_) throw DimensionMismatch("evaluation point has the wrong dimension");
  RatVector out;
  out.reserve(components_.size());
  for (const auto& c : components_) out.push_back(c.evaluate(point));
  return out;
}

PolyMatrix PolyMap::jacobian() const {
  PolyMatrix j(target_dim(), source_dim_);
  for (std::size_t a = 0; a < target_dim(); ++a)
    for (std::size_t b = 0; b < source_dim_; ++b) j(a, b) = components_[a].derivative(b);
  return j;
}

std::vector<std::string> PolyMap::to_strings() const {
  std::vector<std::string> out;
  for (const auto& c : components_) out.push_back(c.to_string());
  return out;
}

}  // namespace carnot
