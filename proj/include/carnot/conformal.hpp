// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "carnot/algebra.hpp"
#include "carnot/nilpotent.hpp"
#include "carnot/operators.hpp"

namespace carnot {

/// Returns lambda^2 when L L^T = lambda^2 Id, the transpose taken with
/// respect to the two scalar products. `l` maps source-polarization
/// coordinates to target-polarization coordinates.
std::optional<Rational> is_homothetic_projection(const RatMatrix& l, const Metric& source, const Metric& target);

/// The five equivalent descriptions of a homothetic projection, each
/// evaluated independently and returning its own lambda^2:
///   [0] L^T is a homothetic embedding: <L^T w, L^T w'> = lambda^2 <w, w'>
///   [1] L surjective and L^T L = lambda^2 (projection onto ker(L)^perp)
///   [2] L L^T = lambda^2 Id
///   [3] v -> L v / lambda is an isometry from ker(L)^perp onto W
///   [4] the dual map W* -> V* is a homothetic embedding
std::array<std::optional<Rational>, 5> homothetic_characterizations(const RatMatrix& l, const Metric& source,
                                                                    const Metric& target);

struct FrameEquivalence {
  bool equivalent = false;
  /// Y_i = sum_j witness(i, j) X_j with witness orthogonal, when equivalent.
  std::optional<RatMatrix> witness;
};

/// Decides whether two bases of the same subspace are orthonormal for a
/// common scalar product, i.e. sum X_i X_i^T = sum Y_i Y_i^T.
/// Throws DimensionMismatch when the frames span different subspaces.
FrameEquivalence frames_equivalent(const std::vector<RatVector>& x, const std::vector<RatVector>& y);

struct Residual {
  std::string where;
  Polynomial value;
};

struct CommutationReport {
  bool contact = false;
  bool conformal = false;
  std::optional<Polynomial> lambda_sq;
  PolyVector b;
  std::vector<Residual> residuals;
  std::size_t probes_checked = 0;
};

/// Decides whether Delta_G(u o F) = lambda^2 (Delta_H u) o F + <b, (grad_H u) o F>
/// for polynomial F, recovering lambda^2 and b or returning nonzero witnesses.
/// The verdict is taken from the second-order symbol; the full identity is then
/// checked on monomial probes of degree <= probe_degree and on the squared
/// linear probes <alpha | log(F(0)^{-1} q)>^2.
CommutationReport analyze_commutation(const PolyMap& f, const SubRiemannianGroup& source,
                                      const SubRiemannianGroup& target, unsigned probe_degree);

/// trace_G D^2F + DF[beta_G] - lambda^2 beta_H, the beta being the modular
/// drifts. Throws NotConformal when F is not a conformal submersion of
/// factor lambda.
PolyVector b_vector(const PolyMap& f, const Polynomial& lambda_sq, const SubRiemannianGroup& source,
                    const SubRiemannianGroup& target);

/// Checks the commutation identity for caller-supplied lambda^2 and b; an
/// empty result means every probe passed.
std::vector<Residual> verify_commutation_identity(const PolyMap& f, const SubRiemannianGroup& source,
                                                  const SubRiemannianGroup& target, const Polynomial& lambda_sq,
                                                  const PolyVector& b, unsigned probe_degree);

/// Probe functions in the target coordinates used by the identity checks.
std::vector<Polynomial> probe_functions(const NilpotentGroup& target, const RatVector& base, unsigned probe_degree);

}  // namespace carnot
