// SPDX-License-Identifier: Apache-2.0
#include "carnot/operators.hpp"

namespace carnot {

namespace {

// sum_{ab} q(a,b) E_a E_b + sum_a beta[a] E_a, with E_a = sum_c M(c,a) d_c:
//   second order  M q M^T
//   first order   sum_{ab} q(a,b) E_a(M(d,b)) + (M beta)_d
DifferentialOperator contract_frame(const NilpotentGroup& calculus, const RatMatrix& q, const RatVector& beta) {
  const std::size_t n = calculus.dim();
  const PolyMatrix& m = calculus.frame();
  DifferentialOperator op;
  op.second_order = multiply<Polynomial>(multiply<Polynomial>(m, q), m.transpose());
  op.first_order = multiply<Polynomial>(m, beta);
  for (std::size_t a = 0; a < n; ++a) {
    PolyVectorField ea = m.column(a);
    for (std::size_t b = 0; b < n; ++b) {
      if (is_zero(q(a, b))) continue;
      for (std::size_t d = 0; d < n; ++d) {
        Polynomial t = apply_field(ea, m(d, b));
        if (!t.is_zero()) op.first_order[d] += q(a, b) * t;
      }
    }
  }
  return op;
}

RatVector basis_traces(const LieAlgebra& algebra) {
  RatVector t(algebra.dim());
  for (std::size_t a = 0; a < algebra.dim(); ++a) t[a] = algebra.modular_trace(algebra.basis_vector(a));
  return t;
}

}  // namespace

DifferentialOperator DifferentialOperator::zero(std::size_t dim) {
  return DifferentialOperator{PolyMatrix(dim, dim), PolyVector(dim), Polynomial()};
}

Polynomial DifferentialOperator::apply(const Polynomial& u) const {
  const std::size_t n = dim();
  if (u.variable_bound() > n) throw DimensionMismatch("operator applied to a polynomial in too many variables");
  Polynomial out = zero_order * u;
  for (std::size_t a = 0; a < n; ++a) {
    Polynomial da = u.derivative(a);
    if (da.is_zero()) continue;
    if (!first_order[a].is_zero()) out += first_order[a] * da;
    for (std::size_t b = 0; b < n; ++b) {
      if (second_order(a, b).is_zero()) continue;
      Polynomial dab = da.derivative(b);
      if (!dab.is_zero()) out += second_order(a, b) * dab;
    }
  }
  return out;
}

bool DifferentialOperator::is_symmetric() const {
  for (std::size_t a = 0; a < second_order.rows(); ++a)
    for (std::size_t b = a + 1; b < second_order.cols(); ++b)
      if (!(second_order(a, b) == second_order(b, a))) return false;
  return true;
}

DifferentialOperator operator*(const Rational& c, DifferentialOperator op) {
  for (std::size_t a = 0; a < op.second_order.rows(); ++a)
    for (std::size_t b = 0; b < op.second_order.cols(); ++b) op.second_order(a, b) *= c;
  for (auto& p : op.first_order) p *= c;
  op.zero_order *= c;
  return op;
}

RatMatrix cometric(const SubRiemannianGroup& group) {
  RatMatrix b = group.polarization().matrix();
  return b * group.metric().inverse_gram() * b.transpose();
}

PolyVector gradient(const Polynomial& u, const SubRiemannianGroup& group) {
  NilpotentGroup calculus(group);
  const auto& basis = group.polarization().basis();
  PolyVector derivatives;
  for (const auto& x : basis) derivatives.push_back(apply_field(calculus.left_invariant_field(x), u));
  return multiply<Polynomial>(group.metric().inverse_gram(), derivatives);
}

PolyVector gradient_vector(const Polynomial& u, const SubRiemannianGroup& group) {
  PolyVector coeffs = gradient(u, group);
  return multiply<Polynomial>(group.polarization().matrix(), coeffs);
}

Polynomial divergence(const PolyVectorField& field, const SubRiemannianGroup& group) {
  if (!group.is_nilpotent()) throw NotNilpotent("divergence in exponential coordinates needs a nilpotent group");
  if (field.size() != group.dim()) throw DimensionMismatch("divergence: field dimension differs from the group");
  return coordinate_divergence(field);
}

RatVector modular_drift(const SubRiemannianGroup& group) {
  return multiply<Rational>(cometric(group), basis_traces(group.algebra()));
}

DifferentialOperator sublaplacian(const SubRiemannianGroup& group) {
  return sublaplacian(group, NilpotentGroup(group));
}

DifferentialOperator sublaplacian(const SubRiemannianGroup& group, const NilpotentGroup& calculus) {
  return contract_frame(calculus, cometric(group), modular_drift(group));
}

DifferentialOperator sum_of_squares(const NilpotentGroup& calculus, const std::vector<RatVector>& frame) {
  const std::size_t n = calculus.dim();
  RatMatrix q(n, n);
  RatVector beta(n);
  for (const auto& x : frame) {
    if (x.size() != n) throw DimensionMismatch("frame vector length differs from the group");
    Rational div = calculus.algebra().modular_trace(x);
    for (std::size_t a = 0; a < n; ++a) {
      beta[a] += div * x[a];
      for (std::size_t b = 0; b < n; ++b) q(a, b) += x[a] * x[b];
    }
  }
  return contract_frame(calculus, q, beta);
}

PullbackDecomposition pullback_operator(const PolyMap& f, const SubRiemannianGroup& source,
                                        const SubRiemannianGroup& target) {
  NilpotentGroup g(source), h(target);
  PolyMatrix df = lie_differential(f, g, h);
  SecondDifferential d2 = second_lie_differential(f, g, h);
  RatMatrix q = cometric(source);
  PullbackDecomposition out;
  out.p2 = multiply<Polynomial>(multiply<Polynomial>(df, q), df.transpose());
  out.p1 = multiply<Polynomial>(df, modular_drift(source));
  for (std::size_t k = 0; k < h.dim(); ++k)
    for (std::size_t a = 0; a < g.dim(); ++a)
      for (std::size_t b = 0; b < g.dim(); ++b)
        if (!is_zero(q(a, b))) out.p1[k] += q(a, b) * d2.components[k](a, b);
  return out;
}

Polynomial apply_pullback(const PullbackDecomposition& d, const PolyMap& f, const NilpotentGroup& target,
                          const Polynomial& u) {
  const std::size_t n = target.dim();
  std::vector<PolyVectorField> fields;
  for (std::size_t a = 0; a < n; ++a) fields.push_back(target.frame().column(a));
  Polynomial out = d.p0 * f.pull_back(u);
  for (std::size_t b = 0; b < n; ++b) {
    Polynomial eb = apply_field(fields[b], u);
    if (eb.is_zero()) continue;
    if (!d.p1[b].is_zero()) out += d.p1[b] * f.pull_back(eb);
    for (std::size_t a = 0; a < n; ++a) {
      if (d.p2(a, b).is_zero()) continue;
      Polynomial eab = apply_field(fields[a], eb);
      if (!eab.is_zero()) out += d.p2(a, b) * f.pull_back(eab);
    }
  }
  return out;
}

}  // namespace carnot
