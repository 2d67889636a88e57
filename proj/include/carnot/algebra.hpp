// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "carnot/rational.hpp"

namespace carnot {

/// One bracket entry as it appears in input: [e_i, e_j] = sum_k coeffs[k] e_k.
struct BracketEntry {
  std::size_t i = 0;
  std::size_t j = 0;
  std::vector<std::pair<std::size_t, Rational>> coeffs;
};

/// Raw structure constants c_{ij}^k exactly as supplied, before any axiom is
/// assumed. Only a validated table can become a LieAlgebra.
class StructureTable {
 public:
  explicit StructureTable(std::size_t dim);

  /// Entries given only as (i,j) get their (j,i) partner filled by
  /// antisymmetry; when both orders are present both are kept verbatim.
  static StructureTable from_entries(std::size_t dim, const std::vector<BracketEntry>& entries);

  std::size_t dim() const { return dim_; }
  const Rational& at(std::size_t i, std::size_t j, std::size_t k) const { return c_[index(i, j, k)]; }
  Rational& at(std::size_t i, std::size_t j, std::size_t k) { return c_[index(i, j, k)]; }

 private:
  std::size_t index(std::size_t i, std::size_t j, std::size_t k) const { return (i * dim_ + j) * dim_ + k; }

  std::size_t dim_;
  std::vector<Rational> c_;
};

struct AxiomViolation {
  enum class Kind { Antisymmetry, Jacobi };
  Kind kind;
  /// Zero-based basis indices: (i, j, k) for antisymmetry of c_{ij}^k;
  /// (i, j, l, k) for the k-th component of the cyclic Jacobi sum on e_i, e_j, e_l.
  std::vector<std::size_t> indices;
  Rational defect;

  std::string describe() const;
};

struct ValidationReport {
  std::vector<AxiomViolation> violations;
  bool valid() const { return violations.empty(); }
};

ValidationReport validate(const StructureTable& table);

/// Finite-dimensional real Lie algebra given by exact structure constants.
/// Only c_{ij}^k with i < j is stored; the other order is read by antisymmetry.
class LieAlgebra {
 public:
  /// Throws InvalidAlgebra carrying the first violation when `table` fails validation.
  explicit LieAlgebra(const StructureTable& table);
  static LieAlgebra from_entries(std::size_t dim, const std::vector<BracketEntry>& entries);
  static LieAlgebra abelian(std::size_t dim);

  std::size_t dim() const { return dim_; }
  Rational structure_constant(std::size_t i, std::size_t j, std::size_t k) const;
  /// Nonzero constants with i < j, as (i, j) -> [(k, c_{ij}^k)].
  const std::map<std::pair<std::size_t, std::size_t>, std::vector<std::pair<std::size_t, Rational>>>& constants()
      const {
    return constants_;
  }
  StructureTable table() const;

  RatVector bracket(const RatVector& x, const RatVector& y) const { return bracket_of(x, y); }

  /// Bracket with coefficients in any commutative ring over the rationals
  /// (Rational, Polynomial).
  template <class S>
  std::vector<S> bracket_of(const std::vector<S>& x, const std::vector<S>& y) const {
    if (x.size() != dim_ || y.size() != dim_) throw DimensionMismatch("bracket: vector length differs from dim");
    std::vector<S> out(dim_);
    for (const auto& [key, coeffs] : constants_) {
      const auto [i, j] = key;
      if ((is_zero(x[i]) || is_zero(y[j])) && (is_zero(x[j]) || is_zero(y[i]))) continue;
      S w = x[i] * y[j];
      w -= x[j] * y[i];
      if (is_zero(w)) continue;
      for (const auto& [k, c] : coeffs) out[k] += c * w;
    }
    return out;
  }

  RatMatrix ad_matrix(const RatVector& x) const;
  Rational modular_trace(const RatVector& x) const;
  bool is_unimodular() const;
  /// Nilpotency step s (g^{s+1} = 0 in the lower central series), or nothing.
  std::optional<int> nilpotency_step() const;

  RatVector basis_vector(std::size_t i) const;

 private:
  LieAlgebra() = default;

  std::size_t dim_ = 0;
  std::map<std::pair<std::size_t, std::size_t>, std::vector<std::pair<std::size_t, Rational>>> constants_;
};

/// Linearly independent vectors of the Lie algebra.
class Polarization {
 public:
  Polarization(std::size_t dim, std::vector<RatVector> basis);
  static Polarization standard(std::size_t dim, std::size_t count);

  std::size_t ambient_dim() const { return dim_; }
  std::size_t size() const { return basis_.size(); }
  const std::vector<RatVector>& basis() const { return basis_; }
  /// dim x size matrix whose columns are the basis vectors.
  RatMatrix matrix() const { return RatMatrix::from_columns(basis_, dim_); }

 private:
  std::size_t dim_;
  std::vector<RatVector> basis_;
};

/// Scalar product on the polarization, as its Gram matrix in the polarization basis.
class Metric {
 public:
  explicit Metric(RatMatrix gram);
  static Metric identity(std::size_t n) { return Metric(RatMatrix::identity(n)); }

  const RatMatrix& gram() const { return gram_; }
  const RatMatrix& inverse_gram() const { return inverse_; }
  std::size_t size() const { return gram_.rows(); }

 private:
  RatMatrix gram_;
  RatMatrix inverse_;
};

struct BracketGeneration {
  bool generating = false;
  /// dim V, dim(V + [V,V]), ... until stable.
  std::vector<std::size_t> filtration;
};

BracketGeneration bracket_generating(const LieAlgebra& algebra, const Polarization& v);

/// Layer bases V_1, ..., V_s of a stratification with the given first layer.
using Strata = std::vector<std::vector<RatVector>>;

/// Throws NotStratifiable when the layers generated from `first_layer` do not
/// form a direct sum exhausting the algebra.
Strata stratify(const LieAlgebra& algebra, const Polarization& first_layer);

/// Lie algebra with a bracket-generating polarization and a scalar product on it.
class SubRiemannianGroup {
 public:
  SubRiemannianGroup(LieAlgebra algebra, Polarization polarization, Metric metric);

  const LieAlgebra& algebra() const { return algebra_; }
  const Polarization& polarization() const { return polarization_; }
  const Metric& metric() const { return metric_; }
  std::size_t dim() const { return algebra_.dim(); }
  std::size_t rank() const { return polarization_.size(); }
  std::optional<int> step() const { return step_; }
  bool is_nilpotent() const { return step_.has_value(); }
  /// Present when the polarization is the first layer of a stratification.
  const std::optional<Strata>& strata() const { return strata_; }
  bool is_carnot() const { return strata_.has_value(); }

  /// Abelian R^n with the standard polarization and identity metric.
  static SubRiemannianGroup euclidean(std::size_t n);

 private:
  LieAlgebra algebra_;
  Polarization polarization_;
  Metric metric_;
  std::optional<int> step_;
  std::optional<Strata> strata_;
};

}  // namespace carnot
