// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>

#include "carnot/algebra.hpp"
#include "carnot/nilpotent.hpp"
#include "carnot/polynomial.hpp"

namespace carnot {

/// Order-two operator with polynomial coefficients in coordinates:
///
///   u -> sum_{a,b} second_order(a,b) d_a d_b u + sum_a first_order[a] d_a u + zero_order u
///
/// `second_order` is symmetric, so a mixed derivative d_a d_b (a != b)
/// carries twice the stored entry.
struct DifferentialOperator {
  PolyMatrix second_order;
  PolyVector first_order;
  Polynomial zero_order;

  static DifferentialOperator zero(std::size_t dim);
  std::size_t dim() const { return first_order.size(); }
  Polynomial apply(const Polynomial& u) const;
  bool is_symmetric() const;

  friend bool operator==(const DifferentialOperator& a, const DifferentialOperator& b) {
    return a.second_order == b.second_order && a.first_order == b.first_order && a.zero_order == b.zero_order;
  }
};

DifferentialOperator operator*(const Rational& c, DifferentialOperator op);

/// q = B gram^{-1} B^T, B having the polarization vectors as columns. Equals
/// sum_i X_i X_i^T for any orthonormal frame X of the polarization.
RatMatrix cometric(const SubRiemannianGroup& group);

/// Horizontal gradient, as coefficients in the polarization basis.
PolyVector gradient(const Polynomial& u, const SubRiemannianGroup& group);
/// Horizontal gradient as a vector of the algebra (q times the frame derivatives).
PolyVector gradient_vector(const Polynomial& u, const SubRiemannianGroup& group);

/// Haar divergence in exponential coordinates. Throws NotNilpotent.
Polynomial divergence(const PolyVectorField& field, const SubRiemannianGroup& group);

/// beta = sum_i trace(ad X_i) X_i over an orthonormal frame, i.e. q times the
/// vector of basis traces. Zero on unimodular groups.
RatVector modular_drift(const SubRiemannianGroup& group);

/// sum q^{ab} E_a E_b + beta^a E_a over the algebra basis fields E_a.
/// Throws NotNilpotent.
DifferentialOperator sublaplacian(const SubRiemannianGroup& group);
DifferentialOperator sublaplacian(const SubRiemannianGroup& group, const NilpotentGroup& calculus);

/// Sum of squares of the given frame's left-invariant fields plus their
/// divergence drift (the operator P_X = sum X_i^2 + div(X_i) X_i).
DifferentialOperator sum_of_squares(const NilpotentGroup& calculus, const std::vector<RatVector>& frame);

/// Decomposition Delta_G(u o F) = P2 u + P1 u + P0 u with
///   P2 u = sum_{ab} p2(a,b) (E_a E_b u) o F,  P1 u = sum_a p1[a] (E_a u) o F,
/// E_a the basis fields of the target and all coefficients polynomials on the source.
struct PullbackDecomposition {
  PolyMatrix p2;
  PolyVector p1;
  Polynomial p0;
};

PullbackDecomposition pullback_operator(const PolyMap& f, const SubRiemannianGroup& source,
                                        const SubRiemannianGroup& target);

/// Evaluates the right-hand side of the decomposition on a probe u.
Polynomial apply_pullback(const PullbackDecomposition& d, const PolyMap& f, const NilpotentGroup& target,
                          const Polynomial& u);

}  // namespace carnot
