// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "carnot/algebra.hpp"
#include "carnot/polynomial.hpp"

namespace carnot {

/// One Dynkin term c * [w1,[w2,[...,wm]]] where each letter is 'X' or 'Y'.
struct BchTerm {
  std::string word;
  Rational coefficient;
};

/// Terms of log(exp X exp Y) of bracket length <= step, with identical
/// nested words merged and vanishing ones dropped. Generated once per step;
/// concurrent callers share the cached table.
const std::vector<BchTerm>& bch_terms(int step);

/// Evaluates sum of `terms` with X -> x and Y -> y over any coefficient ring.
template <class S>
std::vector<S> evaluate_bch(const LieAlgebra& algebra, const std::vector<BchTerm>& terms, const std::vector<S>& x,
                            const std::vector<S>& y) {
  std::vector<S> out(algebra.dim());
  std::map<std::string_view, std::vector<S>> suffix;  // right-nested value of each word suffix
  auto nested = [&](auto&& self, std::string_view w) -> const std::vector<S>& {
    auto it = suffix.find(w);
    if (it != suffix.end()) return it->second;
    std::vector<S> v;
    if (w.size() == 1)
      v = w[0] == 'X' ? x : y;
    else
      v = algebra.bracket_of(w[0] == 'X' ? x : y, self(self, w.substr(1)));
    return suffix.emplace(w, std::move(v)).first->second;
  };
  for (const auto& term : terms) {
    const auto& v = nested(nested, term.word);
    for (std::size_t k = 0; k < out.size(); ++k)
      if (!is_zero(v[k])) out[k] += term.coefficient * v[k];
  }
  return out;
}

using PolyVectorField = PolyVector;

/// Simply connected nilpotent Lie group in exponential coordinates of the
/// first kind: a point is its logarithm, written in the algebra basis, and
/// the group law is the truncated BCH series.
class NilpotentGroup {
 public:
  /// Throws NotNilpotent.
  explicit NilpotentGroup(LieAlgebra algebra);
  explicit NilpotentGroup(const SubRiemannianGroup& group) : NilpotentGroup(group.algebra()) {}

  const LieAlgebra& algebra() const { return algebra_; }
  std::size_t dim() const { return algebra_.dim(); }
  int step() const { return step_; }

  RatVector product(const RatVector& p, const RatVector& q) const;
  PolyVector product(const PolyVector& p, const PolyVector& q) const;
  RatVector inverse(const RatVector& p) const;

  /// Left-invariant field with value x at the identity: d/dt (p * tx) at t=0.
  PolyVectorField left_invariant_field(const RatVector& x) const;
  /// Columns are the coordinate components of the fields of the basis vectors.
  const PolyMatrix& frame() const { return frame_; }
  /// Inverse of `frame()`: maps coordinate tangent vectors at p back to the algebra.
  const PolyMatrix& coframe() const { return coframe_; }

  /// p -> a * p
  PolyMap left_translation(const RatVector& a) const;

 private:
  LieAlgebra algebra_;
  int step_ = 1;
  PolyMatrix frame_;
  PolyMatrix coframe_;
};

/// X u = sum_a X^a d_a u
Polynomial apply_field(const PolyVectorField& field, const Polynomial& u);
/// Coordinate divergence sum_a d_a X^a, which is the Haar divergence in
/// exponential coordinates of a nilpotent group.
Polynomial coordinate_divergence(const PolyVectorField& field);
/// Commutator field [X, Y] = X(Y) - Y(X), componentwise.
PolyVectorField field_commutator(const PolyVectorField& x, const PolyVectorField& y);

/// DF(p)[v] = d/dt F(p)^{-1} F(p exp(tv)), as a target-dim x source-dim
/// matrix of polynomials in the source coordinates.
PolyMatrix lie_differential(const PolyMap& f, const NilpotentGroup& source, const NilpotentGroup& target);

/// D^2F(p)[v,w] = d/dt DF(p exp(tw))[v]. Entry `[k](i, j)` is component k of
/// D^2F(p)[e_i, e_j].
struct SecondDifferential {
  std::vector<PolyMatrix> components;
  PolyVector apply(const RatVector& v, const RatVector& w) const;
};

SecondDifferential second_lie_differential(const PolyMap& f, const NilpotentGroup& source,
                                           const NilpotentGroup& target);

/// Dilation delta_lambda of a Carnot group: lambda^k on the k-th layer.
PolyMap dilation(const SubRiemannianGroup& group, const Rational& lambda);

}  // namespace carnot
