// SPDX-License-Identifier: Apache-2.0
#include "carnot/algebra.hpp"

#include <sstream>

namespace carnot {

StructureTable::StructureTable(std::size_t dim) : dim_(dim), c_(dim * dim * dim) {}

StructureTable StructureTable::from_entries(std::size_t dim, const std::vector<BracketEntry>& entries) {
  StructureTable t(dim);
  std::vector<bool> given(dim * dim, false);
  for (const auto& e : entries) {
    if (e.i >= dim || e.j >= dim) throw DimensionMismatch("bracket entry index outside the algebra");
    given[e.i * dim + e.j] = true;
    for (const auto& [k, c] : e.coeffs) {
      if (k >= dim) throw DimensionMismatch("bracket coefficient index outside the algebra");
      t.at(e.i, e.j, k) += c;
    }
  }
  for (const auto& e : entries) {
    if (e.i == e.j || given[e.j * dim + e.i]) continue;
    for (std::size_t k = 0; k < dim; ++k) t.at(e.j, e.i, k) = -t.at(e.i, e.j, k);
  }
  return t;
}

std::string AxiomViolation::describe() const {
  std::ostringstream out;
  if (kind == Kind::Antisymmetry) {
    out << "antisymmetry violated at (i,j,k)=(" << indices[0] + 1 << "," << indices[1] + 1 << "," << indices[2] + 1
        << "): c_ij^k + c_ji^k = " << defect.get_str();
  } else {
    out << "Jacobi identity violated for (e" << indices[0] + 1 << ",e" << indices[1] + 1 << ",e" << indices[2] + 1
        << ") in component " << indices[3] + 1 << ": cyclic sum = " << defect.get_str();
  }
  return out.str();
}

ValidationReport validate(const StructureTable& t) {
  ValidationReport report;
  const std::size_t n = t.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        Rational defect = t.at(i, j, k) + t.at(j, i, k);
        if (!is_zero(defect))
          report.violations.push_back({AxiomViolation::Kind::Antisymmetry, {i, j, k}, defect});
      }
  // [e_i,[e_j,e_l]] + [e_j,[e_l,e_i]] + [e_l,[e_i,e_j]] computed from the raw table.
  auto nested = [&](std::size_t a, std::size_t b, std::size_t c, std::size_t k) {
    Rational s = 0;
    for (std::size_t m = 0; m < n; ++m) {
      const Rational& inner = t.at(b, c, m);
      if (!is_zero(inner)) s += inner * t.at(a, m, k);
    }
    return s;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t l = j + 1; l < n; ++l)
        for (std::size_t k = 0; k < n; ++k) {
          Rational s = nested(i, j, l, k) + nested(j, l, i, k) + nested(l, i, j, k);
          if (!is_zero(s)) report.violations.push_back({AxiomViolation::Kind::Jacobi, {i, j, l, k}, s});
        }
  return report;
}

LieAlgebra::LieAlgebra(const StructureTable& table) : dim_(table.dim()) {
  ValidationReport report = validate(table);
  if (!report.valid()) throw InvalidAlgebra(report.violations.front().describe());
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = i + 1; j < dim_; ++j) {
      std::vector<std::pair<std::size_t, Rational>> coeffs;
      for (std::size_t k = 0; k < dim_; ++k)
        if (!is_zero(table.at(i, j, k))) coeffs.emplace_back(k, table.at(i, j, k));
      if (!coeffs.empty()) constants_.emplace(std::make_pair(i, j), std::move(coeffs));
    }
}

LieAlgebra LieAlgebra::from_entries(std::size_t dim, const std::vector<BracketEntry>& entries) {
  return LieAlgebra(StructureTable::from_entries(dim, entries));
}

LieAlgebra LieAlgebra::abelian(std::size_t dim) { return LieAlgebra(StructureTable(dim)); }

Rational LieAlgebra::structure_constant(std::size_t i, std::size_t j, std::size_t k) const {
  if (i == j) return 0;
  bool flip = i > j;
  auto it = constants_.find(flip ? std::make_pair(j, i) : std::make_pair(i, j));
  if (it == constants_.end()) return 0;
  for (const auto& [kk, c] : it->second)
    if (kk == k) return flip ? Rational(-c) : c;
  return 0;
}

StructureTable LieAlgebra::table() const {
  StructureTable t(dim_);
  for (const auto& [key, coeffs] : constants_)
    for (const auto& [k, c] : coeffs) {
      t.at(key.first, key.second, k) = c;
      t.at(key.second, key.first, k) = -c;
    }
  return t;
}

RatVector LieAlgebra::basis_vector(std::size_t i) const {
  RatVector e(dim_);
  e.at(i) = 1;
  return e;
}

RatMatrix LieAlgebra::ad_matrix(const RatVector& x) const {
  if (x.size() != dim_) throw DimensionMismatch("ad_matrix: vector length differs from dim");
  RatMatrix ad(dim_, dim_);
  for (std::size_t j = 0; j < dim_; ++j) {
    RatVector col = bracket(x, basis_vector(j));
    for (std::size_t i = 0; i < dim_; ++i) ad(i, j) = col[i];
  }
  return ad;
}

Rational LieAlgebra::modular_trace(const RatVector& x) const {
  RatMatrix ad = ad_matrix(x);
  Rational tr = 0;
  for (std::size_t i = 0; i < dim_; ++i) tr += ad(i, i);
  return tr;
}

bool LieAlgebra::is_unimodular() const {
  for (std::size_t i = 0; i < dim_; ++i)
    if (!is_zero(modular_trace(basis_vector(i)))) return false;
  return true;
}

std::optional<int> LieAlgebra::nilpotency_step() const {
  std::vector<RatVector> current;
  for (std::size_t i = 0; i < dim_; ++i) current.push_back(basis_vector(i));
  std::size_t previous_rank = dim_;
  for (int step = 1;; ++step) {
    std::vector<RatVector> next;
    for (std::size_t i = 0; i < dim_; ++i)
      for (const auto& w : current) {
        RatVector b = bracket(basis_vector(i), w);
        next.push_back(std::move(b));
      }
    auto keep = independent_subset(next, dim_);
    if (keep.empty()) return step;
    if (keep.size() == previous_rank) return std::nullopt;
    previous_rank = keep.size();
    current.clear();
    for (auto idx : keep) current.push_back(next[idx]);
  }
}

Polarization::Polarization(std::size_t dim, std::vector<RatVector> basis) : dim_(dim), basis_(std::move(basis)) {
  for (const auto& v : basis_)
    if (v.size() != dim_) throw DimensionMismatch("polarization vector length differs from dim");
  if (span_rank(basis_, dim_) != basis_.size()) throw InvalidAlgebra("polarization vectors are linearly dependent");
}

Polarization Polarization::standard(std::size_t dim, std::size_t count) {
  std::vector<RatVector> basis;
  for (std::size_t i = 0; i < count; ++i) {
    RatVector e(dim);
    e.at(i) = 1;
    basis.push_back(std::move(e));
  }
  return Polarization(dim, std::move(basis));
}

Metric::Metric(RatMatrix gram) : gram_(std::move(gram)) {
  if (!is_symmetric(gram_)) throw InvalidAlgebra("metric Gram matrix is not symmetric");
  if (!is_positive_definite(gram_)) throw InvalidAlgebra("metric Gram matrix is not positive definite");
  inverse_ = *inverse(gram_);
}

BracketGeneration bracket_generating(const LieAlgebra& algebra, const Polarization& v) {
  if (v.ambient_dim() != algebra.dim()) throw DimensionMismatch("polarization lives in a different algebra");
  const std::size_t n = algebra.dim();
  BracketGeneration out;
  std::vector<RatVector> span = v.basis();
  std::size_t dim = span_rank(span, n);
  out.filtration.push_back(dim);
  while (dim < n) {
    std::vector<RatVector> grown = span;
    for (const auto& x : v.basis())
      for (const auto& w : span) grown.push_back(algebra.bracket(x, w));
    auto keep = independent_subset(grown, n);
    std::size_t next = keep.size();
    out.filtration.push_back(next);
    if (next == dim) break;
    span.clear();
    for (auto idx : keep) span.push_back(grown[idx]);
    dim = next;
  }
  out.generating = dim == n;
  return out;
}

Strata stratify(const LieAlgebra& algebra, const Polarization& first_layer) {
  if (first_layer.ambient_dim() != algebra.dim()) throw DimensionMismatch("first layer lives in a different algebra");
  const std::size_t n = algebra.dim();
  Strata layers{first_layer.basis()};
  std::vector<RatVector> cumulative = first_layer.basis();
  while (true) {
    std::vector<RatVector> brackets;
    for (const auto& x : first_layer.basis())
      for (const auto& w : layers.back()) brackets.push_back(algebra.bracket(x, w));
    std::size_t layer_dim = span_rank(brackets, n);
    if (layer_dim == 0) break;
    // Greedy complement: bracket vectors in generation order that enlarge the sum so far.
    std::vector<RatVector> candidate = cumulative;
    candidate.insert(candidate.end(), brackets.begin(), brackets.end());
    auto keep = independent_subset(candidate, n);
    std::vector<RatVector> layer;
    for (auto idx : keep)
      if (idx >= cumulative.size()) layer.push_back(candidate[idx]);
    if (layer.size() != layer_dim)
      throw NotStratifiable("layer " + std::to_string(layers.size() + 1) + " meets the lower layers");
    cumulative.insert(cumulative.end(), layer.begin(), layer.end());
    layers.push_back(std::move(layer));
  }
  if (cumulative.size() != n)
    throw NotStratifiable("layers span dimension " + std::to_string(cumulative.size()) + " of " + std::to_string(n));
  return layers;
}

SubRiemannianGroup::SubRiemannianGroup(LieAlgebra algebra, Polarization polarization, Metric metric)
    : algebra_(std::move(algebra)), polarization_(std::move(polarization)), metric_(std::move(metric)) {
  if (polarization_.ambient_dim() != algebra_.dim()) throw DimensionMismatch("polarization lives in a different algebra");
  if (metric_.size() != polarization_.size()) throw DimensionMismatch("metric size differs from polarization rank");
  if (!bracket_generating(algebra_, polarization_).generating)
    throw InvalidAlgebra("polarization is not bracket generating");
  step_ = algebra_.nilpotency_step();
  try {
    strata_ = stratify(algebra_, polarization_);
  } catch (const NotStratifiable&) {
    strata_.reset();
  }
}

SubRiemannianGroup SubRiemannianGroup::euclidean(std::size_t n) {
  return SubRiemannianGroup(LieAlgebra::abelian(n), Polarization::standard(n, n), Metric::identity(n));
}

}  // namespace carnot
