// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "carnot/rational.hpp"

namespace carnot {

/// Multivariate polynomial with exact rational coefficients in variables
/// x1, x2, ... (index 0, 1, ... internally).
///
/// Exponent vectors are stored with trailing zeros removed, so every monomial
/// has a unique key regardless of how many variables the caller has in mind.
/// Zero coefficients are never stored.
class Polynomial {
 public:
  using Exponents = std::vector<std::uint32_t>;
  using Terms = std::map<Exponents, Rational>;

  Polynomial() = default;
  explicit Polynomial(const Rational& c);
  explicit Polynomial(int c) : Polynomial(Rational(c)) {}

  static Polynomial variable(std::size_t index);
  static Polynomial monomial(Exponents exponents, const Rational& c = 1);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_term() const;
  Rational coefficient(Exponents exponents) const;
  unsigned degree() const;
  /// One past the largest variable index that occurs.
  std::size_t variable_bound() const;

  Polynomial derivative(std::size_t var) const;
  Rational evaluate(std::span<const Rational> point) const;
  /// Substitutes `values[i]` for variable i.
  Polynomial compose(std::span<const Polynomial> values) const;
  Polynomial pow(unsigned e) const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Polynomial& o);
  Polynomial& operator*=(const Rational& c);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }
  friend Polynomial operator-(Polynomial a);
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.terms_ == b.terms_; }

  /// Graded, human-readable form such as "x1 + 1/2*x2^2".
  std::string to_string() const;
  /// Parses +, -, *, ^ (non-negative integer), parentheses, rational
  /// literals and variables x1..x{nvars}. Division is allowed by nonzero
  /// constants only.
  static Polynomial parse(std::string_view text, std::size_t nvars);

 private:
  void add_term(const Exponents& e, const Rational& c);

  Terms terms_;
};

inline bool is_zero(const Polynomial& p) { return p.is_zero(); }

using PolyVector = std::vector<Polynomial>;
using PolyMatrix = Matrix<Polynomial>;

/// Coordinate polynomials x1..xn.
PolyVector coordinate_polynomials(std::size_t n);
PolyVector constant_vector(const RatVector& v);
/// Every monomial in `nvars` variables of total degree at most `max_degree`.
std::vector<Polynomial> monomials_up_to(std::size_t nvars, unsigned max_degree);

/// Polynomial map between coordinate spaces, component i being the i-th
/// target coordinate as a polynomial in the source coordinates.
class PolyMap {
 public:
  PolyMap() = default;
  PolyMap(std::size_t source_dim, PolyVector components);

  static PolyMap identity(std::size_t n);
  /// x -> m x
  static PolyMap linear(const RatMatrix& m);
  static PolyMap constant(std::size_t source_dim, const RatVector& value);
  static PolyMap parse(std::size_t source_dim, const std::vector<std::string>& components);

  std::size_t source_dim() const { return source_dim_; }
  std::size_t target_dim() const { return components_.size(); }
  const PolyVector& components() const { return components_; }
  const Polynomial& operator[](std::size_t i) const { return components_[i]; }

  /// this ∘ inner
  PolyMap after(const PolyMap& inner) const;
  /// u ∘ this, for u a polynomial in the target coordinates.
  Polynomial pull_back(const Polynomial& u) const;
  PolyVector pull_back(const PolyVector& u) const;
  PolyMatrix pull_back(const PolyMatrix& u) const;
  RatVector evaluate(std::span<const Rational> point) const;
  PolyMatrix jacobian() const;
  std::vector<std::string> to_strings() const;

  friend bool operator==(const PolyMap& a, const PolyMap& b) {
    return a.source_dim_ == b.source_dim_ && a.components_ == b.components_;
  }

 private:
  std::size_t source_dim_ = 0;
  PolyVector components_;
};

}  // namespace carnot
