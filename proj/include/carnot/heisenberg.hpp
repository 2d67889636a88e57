// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "carnot/algebra.hpp"
#include "carnot/operators.hpp"
#include "carnot/rational.hpp"

namespace carnot {

/// Nonsingular alternating form on a 2n-dimensional space.
class SymplecticForm {
 public:
  explicit SymplecticForm(RatMatrix omega);
  /// omega(X_i, Y_i) = 1 on the basis (X_1..X_n, Y_1..Y_n).
  static SymplecticForm standard(std::size_t n);

  const RatMatrix& matrix() const { return omega_; }
  std::size_t size() const { return omega_.rows(); }
  std::size_t half() const { return omega_.rows() / 2; }

 private:
  RatMatrix omega_;
};

struct SymplecticSpectrum {
  std::vector<double> r;  // ascending, positive
  double tolerance = 1e-9;
};

/// A with omega(v, w) = g(v, A w), i.e. G^{-1} Omega. Satisfies G A = -A^T G.
RatMatrix operator_A(const SymplecticForm& omega, const Metric& g);

/// r_1 <= ... <= r_n with -r_i^4 the eigenvalues of A^2.
SymplecticSpectrum symplectic_spectrum(const SymplecticForm& omega, const Metric& g, double tol = 1e-9);

/// Columns X_1..X_n, Y_1..Y_n: g-orthonormal, with omega(X_i, Y_i) = r_i^2,
/// A X_i = -r_i^2 Y_i, A Y_i = r_i^2 X_i and all other pairings zero.
/// Blocks follow ascending r; equal r_i are ordered by projecting the
/// input basis vectors, in order, onto the common eigenspace.
Eigen::MatrixXd normal_basis(const SymplecticForm& omega, const Metric& g, double tol = 1e-9);

/// rho with spectrum_1 = rho * spectrum_2 up to tol, if any.
std::optional<double> isometry_decision(const SymplecticForm& omega1, const Metric& g1, const SymplecticForm& omega2,
                                        const Metric& g2, double tol = 1e-9);

struct HeisenbergIsometry {
  Eigen::MatrixXd psi;
  double rho = 1;
  double metric_residual = 0;  // |Psi^T G1 Psi - G2|_inf
  double form_residual = 0;    // |Psi^T Omega1 Psi - rho^2 Omega2|_inf
};

/// Psi with Psi^T G1 Psi = G2 and Psi^T Omega1 Psi = rho^2 Omega2; the
/// group map is (v, t) -> (Psi v, rho^2 t). Throws NoIsometry.
HeisenbergIsometry build_isometry(const SymplecticForm& omega1, const Metric& g1, const SymplecticForm& omega2,
                                  const Metric& g2, double tol = 1e-9);

/// H^n with basis (X_1..X_n, Y_1..Y_n, Z), [X_i, Y_i] = Z and
/// g(X_i, X_i) = g(Y_i, Y_i) = 1 / r_i^2. r must be positive and nondecreasing.
SubRiemannianGroup heisenberg_group(std::size_t n, const RatVector& r);

struct HeisenbergData {
  SymplecticForm omega;
  Metric metric;
};

/// Reads (omega, g) off a group whose polarization brackets into a single
/// line complementary to it, omega measured against the first nonzero
/// bracket of polarization vectors. Throws InvalidAlgebra otherwise.
HeisenbergData heisenberg_data(const SubRiemannianGroup& group);

/// sum r_i^2 (X_i^2 + Y_i^2) expanded in coordinates (x, y, z):
///   r_i^2 (d_xi^2 + d_yi^2) + r_i^2 (x_i^2 + y_i^2)/4 d_z^2 + r_i^2 (x_i d_yi - y_i d_xi) d_z
DifferentialOperator coordinate_sublaplacian(std::size_t n, const RatVector& r);

}  // namespace carnot
