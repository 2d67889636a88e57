// SPDX-License-Identifier: Apache-2.0
#include "carnot/conformal.hpp"

#include <stdexcept>

namespace carnot {

namespace {

std::optional<Rational> positive(const Rational& q) {
  if (sgn(q) > 0) return q;
  return std::nullopt;
}

// lambda^2 with lhs == lambda^2 * rhs, read off the first nonzero entry of
// rhs in row-major order.
std::optional<Rational> scalar_ratio(const RatMatrix& lhs, const RatMatrix& rhs) {
  if (lhs.rows() != rhs.rows() || lhs.cols() != rhs.cols()) return std::nullopt;
  for (std::size_t i = 0; i < rhs.rows(); ++i)
    for (std::size_t j = 0; j < rhs.cols(); ++j) {
      if (is_zero(rhs(i, j))) continue;
      Rational ratio = lhs(i, j) / rhs(i, j);
      if (lhs == scaled(rhs, ratio)) return positive(ratio);
      return std::nullopt;
    }
  return std::nullopt;
}

// Basis (as columns) of the orthogonal complement of ker(l) for the Gram matrix g.
RatMatrix kernel_complement(const RatMatrix& l, const RatMatrix& g) {
  RatMatrix ker = nullspace(l);
  if (ker.cols() == 0) return RatMatrix::identity(l.cols());
  return nullspace(ker.transpose() * g);
}

struct SymbolCheck {
  bool contact = true;
  bool conformal = false;
  Polynomial lambda_sq;
  std::vector<Residual> residuals;
};

SymbolCheck check_symbol(const PolyMatrix& df, const SubRiemannianGroup& source, const SubRiemannianGroup& target) {
  SymbolCheck out;
  // Contact: covectors vanishing on V(H) must kill DF(p)[V(G)].
  RatMatrix annihilator = nullspace(target.polarization().matrix().transpose());
  PolyMatrix horizontal = multiply<Polynomial>(df, source.polarization().matrix());
  PolyMatrix vertical = multiply<Polynomial>(annihilator.transpose(), horizontal);
  for (std::size_t a = 0; a < vertical.rows(); ++a)
    for (std::size_t i = 0; i < vertical.cols(); ++i)
      if (!vertical(a, i).is_zero()) {
        out.contact = false;
        out.residuals.push_back({"contact[annihilator " + std::to_string(a + 1) + ", polarization " +
                                     std::to_string(i + 1) + "]",
                                 vertical(a, i)});
      }
  if (!out.contact) return out;

  RatMatrix qg = cometric(source), qh = cometric(target);
  PolyMatrix symbol = multiply<Polynomial>(multiply<Polynomial>(df, qg), df.transpose());
  std::optional<std::size_t> pivot;
  for (std::size_t a = 0; a < qh.rows() && !pivot; ++a)
    if (!is_zero(qh(a, a))) pivot = a;
  if (!pivot) throw std::logic_error("target cometric vanishes");
  out.lambda_sq = symbol(*pivot, *pivot) * (Rational(1) / qh(*pivot, *pivot));
  if (out.lambda_sq.is_zero()) {
    out.residuals.push_back({"lambda_sq", out.lambda_sq});
    return out;
  }
  for (std::size_t a = 0; a < qh.rows(); ++a)
    for (std::size_t b = 0; b < qh.cols(); ++b) {
      Polynomial r = symbol(a, b) - qh(a, b) * out.lambda_sq;
      if (!r.is_zero())
        out.residuals.push_back({"symbol(" + std::to_string(a + 1) + "," + std::to_string(b + 1) + ")", r});
    }
  out.conformal = out.residuals.empty();
  return out;
}

PolyVector drift_vector(const PolyMap& f, const PolyMatrix& df, const Polynomial& lambda_sq,
                        const SubRiemannianGroup& source, const SubRiemannianGroup& target,
                        const NilpotentGroup& g, const NilpotentGroup& h) {
  SecondDifferential d2 = second_lie_differential(f, g, h);
  RatMatrix qg = cometric(source);
  PolyVector b = multiply<Polynomial>(df, modular_drift(source));
  RatVector beta_h = modular_drift(target);
  for (std::size_t k = 0; k < h.dim(); ++k) {
    for (std::size_t a = 0; a < g.dim(); ++a)
      for (std::size_t c = 0; c < g.dim(); ++c)
        if (!is_zero(qg(a, c))) b[k] += qg(a, c) * d2.components[k](a, c);
    if (!is_zero(beta_h[k])) b[k] -= beta_h[k] * lambda_sq;
  }
  return b;
}

std::vector<Residual> probe_identity(const PolyMap& f, const DifferentialOperator& delta_g,
                                     const DifferentialOperator& delta_h, const NilpotentGroup& h,
                                     const Polynomial& lambda_sq, const PolyVector& b,
                                     const std::vector<Polynomial>& probes) {
  std::vector<PolyVectorField> fields;
  for (std::size_t a = 0; a < h.dim(); ++a) fields.push_back(h.frame().column(a));
  std::vector<Residual> out;
  for (const auto& u : probes) {
    Polynomial lhs = delta_g.apply(f.pull_back(u));
    Polynomial rhs = lambda_sq * f.pull_back(delta_h.apply(u));
    for (std::size_t a = 0; a < h.dim(); ++a) {
      if (b[a].is_zero()) continue;
      Polynomial ea = apply_field(fields[a], u);
      if (!ea.is_zero()) rhs += b[a] * f.pull_back(ea);
    }
    Polynomial r = lhs - rhs;
    if (!r.is_zero()) out.push_back({"probe " + u.to_string(), r});
  }
  return out;
}

}  // namespace

std::optional<Rational> is_homothetic_projection(const RatMatrix& l, const Metric& source, const Metric& target) {
  if (l.cols() != source.size() || l.rows() != target.size())
    throw DimensionMismatch("linear map dimensions differ from the metrics");
  RatMatrix llt = l * source.inverse_gram() * l.transpose() * target.gram();
  return scalar_ratio(llt, RatMatrix::identity(l.rows()));
}

std::array<std::optional<Rational>, 5> homothetic_characterizations(const RatMatrix& l, const Metric& source,
                                                                    const Metric& target) {
  if (l.cols() != source.size() || l.rows() != target.size())
    throw DimensionMismatch("linear map dimensions differ from the metrics");
  const RatMatrix& gv = source.gram();
  const RatMatrix& gw = target.gram();
  const RatMatrix& gv_inv = source.inverse_gram();
  const RatMatrix lt = gv_inv * l.transpose() * gw;  // metric transpose W -> V
  std::array<std::optional<Rational>, 5> out;

  out[0] = scalar_ratio(lt.transpose() * gv * lt, gw);

  const RatMatrix k = kernel_complement(l, gv);
  if (rank(l) == l.rows() && k.cols() > 0) {
    RatMatrix projection = k * *inverse(k.transpose() * gv * k) * k.transpose() * gv;
    out[1] = scalar_ratio(lt * l, projection);
  }

  out[2] = scalar_ratio(l * lt, RatMatrix::identity(l.rows()));

  if (k.cols() == l.rows() && k.cols() > 0) {
    RatMatrix lk = l * k;
    if (rank(lk) == l.rows()) out[3] = scalar_ratio(lk.transpose() * gw * lk, k.transpose() * gv * k);
  }

  out[4] = scalar_ratio(l * gv_inv * l.transpose(), target.inverse_gram());
  return out;
}

FrameEquivalence frames_equivalent(const std::vector<RatVector>& x, const std::vector<RatVector>& y) {
  if (x.empty() || x.size() != y.size()) throw DimensionMismatch("frames have different sizes");
  const std::size_t dim = x.front().size();
  const std::size_t r = x.size();
  if (span_rank(x, dim) != r || span_rank(y, dim) != r) throw DimensionMismatch("frame vectors are dependent");
  std::vector<RatVector> both = x;
  both.insert(both.end(), y.begin(), y.end());
  if (span_rank(both, dim) != r) throw DimensionMismatch("frames span different subspaces");

  RatMatrix xm = RatMatrix::from_columns(x, dim), ym = RatMatrix::from_columns(y, dim);
  FrameEquivalence out;
  out.equivalent = xm * xm.transpose() == ym * ym.transpose();
  if (!out.equivalent) return out;
  RatMatrix a(r, r);
  for (std::size_t i = 0; i < r; ++i) {
    RatVector coeffs = *solve(xm, y[i]);
    for (std::size_t j = 0; j < r; ++j) a(i, j) = coeffs[j];
  }
  if (!(a * a.transpose() == RatMatrix::identity(r))) throw std::logic_error("frame witness is not orthogonal");
  out.witness = std::move(a);
  return out;
}

std::vector<Polynomial> probe_functions(const NilpotentGroup& target, const RatVector& base, unsigned probe_degree) {
  std::vector<Polynomial> probes = monomials_up_to(target.dim(), probe_degree);
  // <alpha | log(base^{-1} q)>^2 for alpha = e_a and e_a + e_b.
  PolyVector local = target.product(constant_vector(target.inverse(base)), coordinate_polynomials(target.dim()));
  for (std::size_t a = 0; a < target.dim(); ++a) {
    probes.push_back(local[a].pow(2));
    for (std::size_t c = a + 1; c < target.dim(); ++c) probes.push_back((local[a] + local[c]).pow(2));
  }
  return probes;
}

CommutationReport analyze_commutation(const PolyMap& f, const SubRiemannianGroup& source,
                                      const SubRiemannianGroup& target, unsigned probe_degree) {
  if (probe_degree < 2) throw std::invalid_argument("probe degree must be at least 2");
  NilpotentGroup g(source), h(target);
  PolyMatrix df = lie_differential(f, g, h);
  SymbolCheck symbol = check_symbol(df, source, target);

  CommutationReport report;
  report.contact = symbol.contact;
  report.residuals = std::move(symbol.residuals);
  if (symbol.contact) report.lambda_sq = symbol.lambda_sq;
  if (!symbol.conformal) return report;

  report.b = drift_vector(f, df, symbol.lambda_sq, source, target, g, h);
  RatVector base = f.evaluate(RatVector(source.dim()));
  auto probes = probe_functions(h, base, probe_degree);
  report.residuals =
      probe_identity(f, sublaplacian(source, g), sublaplacian(target, h), h, symbol.lambda_sq, report.b, probes);
  report.probes_checked = probes.size();
  report.conformal = report.residuals.empty();
  return report;
}

PolyVector b_vector(const PolyMap& f, const Polynomial& lambda_sq, const SubRiemannianGroup& source,
                    const SubRiemannianGroup& target) {
  NilpotentGroup g(source), h(target);
  PolyMatrix df = lie_differential(f, g, h);
  SymbolCheck symbol = check_symbol(df, source, target);
  if (!symbol.conformal) throw NotConformal("map is not a conformal submersion");
  if (!(symbol.lambda_sq == lambda_sq)) throw NotConformal("map is conformal with factor^2 " + symbol.lambda_sq.to_string());
  return drift_vector(f, df, lambda_sq, source, target, g, h);
}

std::vector<Residual> verify_commutation_identity(const PolyMap& f, const SubRiemannianGroup& source,
                                                  const SubRiemannianGroup& target, const Polynomial& lambda_sq,
                                                  const PolyVector& b, unsigned probe_degree) {
  if (probe_degree < 2) throw std::invalid_argument("probe degree must be at least 2");
  if (b.size() != target.dim()) throw DimensionMismatch("b has the wrong number of components");
  NilpotentGroup g(source), h(target);
  if (f.source_dim() != g.dim() || f.target_dim() != h.dim())
    throw DimensionMismatch("map dimensions differ from the groups");
  RatVector base = f.evaluate(RatVector(source.dim()));
  auto probes = probe_functions(h, base, probe_degree);
  return probe_identity(f, sublaplacian(source, g), sublaplacian(target, h), h, lambda_sq, b, probes);
}

}  // namespace carnot
