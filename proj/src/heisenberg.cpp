// SPDX-License-Identifier: Apache-2.0
#include "carnot/heisenberg.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

namespace carnot {

namespace {

void check_pair(const SymplecticForm& omega, const Metric& g) {
  if (omega.size() != g.size()) throw DimensionMismatch("form and metric dimensions differ");
}

// Frame in which g is the identity. With G = K^{-1} D K^{-T} (exact LDL^T,
// K unit lower triangular) the columns of P = K^T D^{-1/2} are g-orthonormal
// and the form in that frame is P^T Omega P. Everything up to the diagonal
// square roots stays rational, so ill-conditioned metrics lose nothing early.
struct OrthonormalFrame {
  Eigen::MatrixXd to_input;  // P
  Eigen::MatrixXd omega;     // P^T Omega P
  Eigen::MatrixXd gram;      // (P^T Omega P)^T (P^T Omega P), formed exactly before scaling
};

OrthonormalFrame orthonormal_frame(const SymplecticForm& omega, const Metric& g) {
  const std::size_t m = g.size();
  // Gaussian elimination on G: K G K^T = D.
  RatMatrix k = RatMatrix::identity(m);
  RatMatrix work = g.gram();
  RatVector d(m);
  for (std::size_t i = 0; i < m; ++i) {
    d[i] = work(i, i);
    if (d[i] <= 0) throw SingularMatrix("metric is not positive definite");
    for (std::size_t r = i + 1; r < m; ++r) {
      const Rational f = work(r, i) / d[i];
      if (is_zero(f)) continue;
      for (std::size_t c = 0; c < m; ++c) {
        work(r, c) -= f * work(i, c);
        k(r, c) -= f * k(i, c);
      }
    }
  }
  const RatMatrix w = k * omega.matrix() * k.transpose();
  RatMatrix d_inv(m, m);
  for (std::size_t i = 0; i < m; ++i) d_inv(i, i) = 1 / d[i];
  const RatMatrix s = w.transpose() * d_inv * w;

  Eigen::VectorXd root(m);
  for (std::size_t i = 0; i < m; ++i) root(static_cast<Eigen::Index>(i)) = 1.0 / std::sqrt(d[i].get_d());
  OrthonormalFrame out;
  out.to_input = to_eigen(k.transpose()) * root.asDiagonal();
  out.omega = root.asDiagonal() * to_eigen(w) * root.asDiagonal();
  out.gram = root.asDiagonal() * to_eigen(s) * root.asDiagonal();
  return out;
}

struct Cluster {
  double mu;  // r^4
  Eigen::MatrixXd vectors;
};

// Eigenspaces of -Omega'^2 = Omega'^T Omega', grouped by eigenvalue. The
// sorted eigenvalues of a real skew matrix come in equal pairs, so they are
// paired first and neighbouring pairs within tol are merged.
std::vector<Cluster> clusters(const OrthonormalFrame& frame, double tol) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(frame.gram);
  const Eigen::VectorXd& mu = solver.eigenvalues();
  const Eigen::Index m = mu.size();
  const double scale = std::max(1.0, mu.cwiseAbs().maxCoeff());
  if (mu(0) < -tol * scale) throw InvalidAlgebra("A^2 has a positive eigenvalue");
  if (mu(0) <= tol * scale) throw SingularMatrix("form is degenerate");
  std::vector<Cluster> out;
  Eigen::Index start = 0;
  for (Eigen::Index i = 2; i <= m; i += 2) {
    if (std::abs(mu(i - 1) - mu(i - 2)) > 1e-6 * scale) throw InvalidAlgebra("eigenvalues of A^2 do not pair up");
    if (i < m && mu(i) - mu(i - 1) <= tol * scale) continue;
    out.push_back({mu.segment(start, i - start).mean(), solver.eigenvectors().middleCols(start, i - start)});
    start = i;
  }
  return out;
}

// In a g-orthonormal frame A is the form matrix itself. For each eigenspace
// of -A^2 pick unit X by projecting the frame vectors in order, then
// Y = -A X / r^2, which is again a unit vector orthogonal to the previous ones.
Eigen::MatrixXd normal_basis(const OrthonormalFrame& frame, double tol) {
  const Eigen::MatrixXd& a = frame.omega;
  const Eigen::Index m = a.rows();
  const Eigen::Index n = m / 2;
  Eigen::MatrixXd basis(m, m);
  Eigen::Index block = 0;
  for (const auto& c : clusters(frame, tol)) {
    const double r2 = std::sqrt(c.mu);
    Eigen::MatrixXd chosen(m, 0);
    for (Eigen::Index j = 0; j < m && chosen.cols() < c.vectors.cols(); ++j) {
      Eigen::VectorXd x = c.vectors * c.vectors.transpose().col(j);
      if (chosen.cols() > 0) x -= chosen * (chosen.transpose() * x);
      const double norm = x.norm();
      if (norm < 1e-6) continue;
      x /= norm;
      Eigen::VectorXd y = -(a * x) / r2;
      basis.col(block) = x;
      basis.col(n + block) = y;
      ++block;
      chosen.conservativeResize(Eigen::NoChange, chosen.cols() + 2);
      chosen.col(chosen.cols() - 2) = x;
      chosen.col(chosen.cols() - 1) = y;
    }
    if (chosen.cols() != c.vectors.cols()) throw std::logic_error("normal form basis is incomplete");
  }
  return frame.to_input * basis;
}

double max_abs(const Eigen::MatrixXd& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

}  // namespace

SymplecticForm::SymplecticForm(RatMatrix omega) : omega_(std::move(omega)) {
  if (omega_.rows() != omega_.cols() || omega_.rows() % 2 != 0)
    throw DimensionMismatch("symplectic form must be a square matrix of even size");
  if (!is_skew_symmetric(omega_)) throw InvalidAlgebra("symplectic form is not skew-symmetric");
  if (omega_.rows() == 0 || is_zero(determinant(omega_))) throw SingularMatrix("symplectic form is degenerate");
}

SymplecticForm SymplecticForm::standard(std::size_t n) {
  RatMatrix omega(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    omega(i, n + i) = 1;
    omega(n + i, i) = -1;
  }
  return SymplecticForm(std::move(omega));
}

RatMatrix operator_A(const SymplecticForm& omega, const Metric& g) {
  check_pair(omega, g);
  return g.inverse_gram() * omega.matrix();
}

SymplecticSpectrum symplectic_spectrum(const SymplecticForm& omega, const Metric& g, double tol) {
  check_pair(omega, g);
  OrthonormalFrame frame = orthonormal_frame(omega, g);
  SymplecticSpectrum out;
  out.tolerance = tol;
  for (const auto& c : clusters(frame, tol)) {
    double r = std::pow(c.mu, 0.25);
    for (Eigen::Index k = 0; k < c.vectors.cols() / 2; ++k) out.r.push_back(r);
  }
  return out;
}

Eigen::MatrixXd normal_basis(const SymplecticForm& omega, const Metric& g, double tol) {
  check_pair(omega, g);
  return normal_basis(orthonormal_frame(omega, g), tol);
}

std::optional<double> isometry_decision(const SymplecticForm& omega1, const Metric& g1, const SymplecticForm& omega2,
                                        const Metric& g2, double tol) {
  if (omega1.size() != omega2.size()) return std::nullopt;
  auto r1 = symplectic_spectrum(omega1, g1, tol).r;
  auto r2 = symplectic_spectrum(omega2, g2, tol).r;
  for (std::size_t i = 0; i < r1.size(); ++i)
    if (std::abs(r1[i] / r1[0] - r2[i] / r2[0]) > tol) return std::nullopt;
  return r1[0] / r2[0];
}

HeisenbergIsometry build_isometry(const SymplecticForm& omega1, const Metric& g1, const SymplecticForm& omega2,
                                  const Metric& g2, double tol) {
  auto rho = isometry_decision(omega1, g1, omega2, g2, tol);
  if (!rho) throw NoIsometry("symplectic spectra are not proportional");
  // rho^2 omega2 has spectrum rho * r(omega2) = r(omega1), so both pairs
  // share one normal form and Psi maps one normal basis onto the other.
  const double rho2 = *rho * *rho;
  Eigen::MatrixXd o2 = to_eigen(omega2.matrix());
  Eigen::MatrixXd gram2 = to_eigen(g2.gram());
  Eigen::MatrixXd b1 = normal_basis(omega1, g1, tol);
  OrthonormalFrame frame2 = orthonormal_frame(omega2, g2);
  frame2.omega *= rho2;
  frame2.gram *= rho2 * rho2;
  Eigen::MatrixXd b2 = normal_basis(frame2, tol);

  HeisenbergIsometry out;
  out.rho = *rho;
  out.psi = b1 * b2.inverse();
  out.metric_residual = max_abs(out.psi.transpose() * to_eigen(g1.gram()) * out.psi - gram2);
  out.form_residual = max_abs(out.psi.transpose() * to_eigen(omega1.matrix()) * out.psi - rho2 * o2);
  return out;
}

SubRiemannianGroup heisenberg_group(std::size_t n, const RatVector& r) {
  if (n == 0 || r.size() != n) throw InvalidAlgebra("heisenberg_group: need n >= 1 and n scale factors");
  for (std::size_t i = 0; i < n; ++i) {
    if (sgn(r[i]) <= 0) throw InvalidAlgebra("heisenberg_group: scale factors must be positive");
    if (i > 0 && r[i] < r[i - 1]) throw InvalidAlgebra("heisenberg_group: scale factors must be nondecreasing");
  }
  const std::size_t dim = 2 * n + 1;
  std::vector<BracketEntry> entries;
  for (std::size_t i = 0; i < n; ++i) entries.push_back({i, n + i, {{2 * n, Rational(1)}}});
  RatMatrix gram(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    Rational w = 1 / (r[i] * r[i]);
    gram(i, i) = w;
    gram(n + i, n + i) = w;
  }
  return SubRiemannianGroup(LieAlgebra::from_entries(dim, entries), Polarization::standard(dim, 2 * n),
                            Metric(std::move(gram)));
}

HeisenbergData heisenberg_data(const SubRiemannianGroup& group) {
  const auto& basis = group.polarization().basis();
  const std::size_t m = basis.size();
  if (m % 2 != 0 || group.dim() != m + 1) throw InvalidAlgebra("not a Heisenberg-type polarization");
  std::optional<RatVector> z;
  RatMatrix omega(m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      RatVector b = group.algebra().bracket(basis[i], basis[j]);
      if (std::all_of(b.begin(), b.end(), [](const Rational& q) { return is_zero(q); })) continue;
      if (!z) z = b;
      std::optional<Rational> ratio;
      for (std::size_t k = 0; k < b.size(); ++k) {
        if (is_zero((*z)[k])) {
          if (!is_zero(b[k])) throw InvalidAlgebra("polarization brackets span more than one direction");
          continue;
        }
        Rational c = b[k] / (*z)[k];
        if (ratio && *ratio != c) throw InvalidAlgebra("polarization brackets span more than one direction");
        ratio = c;
      }
      omega(i, j) = *ratio;
      omega(j, i) = -*ratio;
    }
  if (!z) throw InvalidAlgebra("polarization is abelian");
  std::vector<RatVector> all = basis;
  all.push_back(*z);
  if (span_rank(all, group.dim()) != group.dim()) throw InvalidAlgebra("bracket direction lies in the polarization");
  for (std::size_t i = 0; i < m; ++i) {
    RatVector b = group.algebra().bracket(basis[i], *z);
    if (std::any_of(b.begin(), b.end(), [](const Rational& q) { return !is_zero(q); }))
      throw InvalidAlgebra("bracket direction is not central");
  }
  return HeisenbergData{SymplecticForm(std::move(omega)), group.metric()};
}

DifferentialOperator coordinate_sublaplacian(std::size_t n, const RatVector& r) {
  if (n == 0 || r.size() != n) throw InvalidAlgebra("coordinate_sublaplacian: need n >= 1 and n scale factors");
  const std::size_t dim = 2 * n + 1;
  const std::size_t z = 2 * n;
  DifferentialOperator op = DifferentialOperator::zero(dim);
  for (std::size_t i = 0; i < n; ++i) {
    const Rational r2 = r[i] * r[i];
    const Polynomial x = Polynomial::variable(i), y = Polynomial::variable(n + i);
    op.second_order(i, i) += Polynomial(r2);
    op.second_order(n + i, n + i) += Polynomial(r2);
    op.second_order(z, z) += (r2 / 4) * (x * x + y * y);
    // r^2 (x d_y - y d_x) d_z, split across the symmetric pair
    op.second_order(i, z) += (-r2 / 2) * y;
    op.second_order(z, i) += (-r2 / 2) * y;
    op.second_order(n + i, z) += (r2 / 2) * x;
    op.second_order(z, n + i) += (r2 / 2) * x;
  }
  return op;
}

}  // namespace carnot
