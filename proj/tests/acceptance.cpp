// SPDX-License-Identifier: Apache-2.0
// Acceptance suite. One line per criterion; exit status 1 if any line fails.
// Tolerances, trial counts and time limits are fixed here and not configurable.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "carnot/conformal.hpp"
#include "carnot/errors.hpp"
#include "carnot/heisenberg.hpp"
#include "carnot/operators.hpp"
#include "test_support.hpp"

namespace {

using namespace carnot;
using testing::RandomRationals;

constexpr double kSpectrumTol = 1e-9;
constexpr double kResidualTol = 1e-8;
constexpr unsigned kProbeDegree = 4;

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

struct Criterion {
  int id;
  const char* title;
  double limit_seconds;
  std::function<Outcome()> body;
};

std::string str(double x) {
  std::ostringstream out;
  out << x;
  return out.str();
}

std::vector<SubRiemannianGroup> test_groups() {
  return {testing::heisenberg1(), testing::heisenberg2(), testing::engel()};
}

const char* group_name(std::size_t index) {
  static const char* names[] = {"H1", "H2", "Engel"};
  return names[index];
}

RatMatrix cayley(RandomRationals& rng, std::size_t n) {
  RatMatrix s(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      s(i, j) = rng.next(2, 3);
      s(j, i) = -s(i, j);
    }
  RatMatrix id = RatMatrix::identity(n);
  return (id - s) * *inverse(id + s);
}

RatMatrix random_invertible(RandomRationals& rng, std::size_t n, long bound = 2) {
  while (true) {
    RatMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) a(i, j) = rng.next(bound, 3);
    if (rank(a) == n) return a;
  }
}

RatMatrix random_form(RandomRationals& rng, std::size_t m) {
  while (true) {
    RatMatrix w(m, m);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i + 1; j < m; ++j) {
        w(i, j) = rng.next(2, 4);
        w(j, i) = -w(i, j);
      }
    if (!is_zero(determinant(w))) return w;
  }
}

double max_abs(const Eigen::MatrixXd& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

// 1: axioms accepted on the reference algebras, single-entry mutations rejected.
Outcome algebra_axioms() {
  Outcome out;
  RandomRationals rng(101);
  std::vector<std::pair<std::string, StructureTable>> tables = {
      {"H1", testing::heisenberg1_algebra().table()},
      {"H2", testing::heisenberg2().algebra().table()},
      {"Engel", testing::engel_algebra().table()},
      {"sl2", StructureTable::from_entries(3, testing::sl2_entries())},
  };
  int rejected = 0;
  for (const auto& [name, table] : tables) {
    if (!validate(table).valid()) out.fail(name + " rejected");
    const long n = static_cast<long>(table.dim());
    for (int trial = 0; trial < 50; ++trial) {
      StructureTable t = table;
      Rational delta = rng.next();
      if (is_zero(delta)) delta = 1;
      t.at(rng.integer(0, n - 1), rng.integer(0, n - 1), rng.integer(0, n - 1)) += delta;
      if (validate(t).valid())
        out.fail(name + " mutation accepted");
      else
        ++rejected;
    }
  }
  out.detail = out.pass ? "4 algebras valid, " + std::to_string(rejected) + "/200 mutations rejected" : out.detail;
  return out;
}

// 2: associativity and inverses of the BCH product.
Outcome bch_soundness() {
  Outcome out;
  RandomRationals rng(102);
  auto groups = test_groups();
  for (std::size_t gi = 0; gi < groups.size(); ++gi) {
    NilpotentGroup g(groups[gi]);
    for (int trial = 0; trial < 100; ++trial) {
      RatVector p = rng.vector(g.dim()), q = rng.vector(g.dim()), s = rng.vector(g.dim());
      if (g.product(g.product(p, q), s) != g.product(p, g.product(q, s))) out.fail(std::string(group_name(gi)) + " not associative");
      RatVector minus_p = p;
      for (auto& x : minus_p) x = -x;
      if (g.product(p, minus_p) != RatVector(g.dim())) out.fail(std::string(group_name(gi)) + " p*(-p) != 0");
    }
  }
  if (out.pass) out.detail = "300 triples exact";
  return out;
}

// 3: [X~, Y~] equals the field of [X, Y].
Outcome bracket_compatibility() {
  Outcome out;
  auto groups = test_groups();
  int pairs = 0;
  for (std::size_t gi = 0; gi < groups.size(); ++gi) {
    NilpotentGroup g(groups[gi]);
    for (std::size_t i = 0; i < g.dim(); ++i)
      for (std::size_t j = 0; j < g.dim(); ++j) {
        RatVector ei = g.algebra().basis_vector(i), ej = g.algebra().basis_vector(j);
        ++pairs;
        if (field_commutator(g.left_invariant_field(ei), g.left_invariant_field(ej)) !=
            g.left_invariant_field(g.algebra().bracket(ei, ej)))
          out.fail(std::string(group_name(gi)) + " pair (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
      }
  }
  if (out.pass) out.detail = std::to_string(pairs) + " basis pairs exact";
  return out;
}

// 4: the sub-Laplacian commutes with left translations.
Outcome left_invariance() {
  Outcome out;
  RandomRationals rng(104);
  auto groups = test_groups();
  std::size_t checks = 0;
  for (std::size_t gi = 0; gi < groups.size(); ++gi) {
    NilpotentGroup g(groups[gi]);
    DifferentialOperator d = sublaplacian(groups[gi], g);
    auto probes = monomials_up_to(g.dim(), 4);
    for (int trial = 0; trial < 20; ++trial) {
      PolyMap l = g.left_translation(rng.vector(g.dim()));
      for (const auto& u : probes) {
        ++checks;
        if (!(d.apply(l.pull_back(u)) - l.pull_back(d.apply(u))).is_zero())
          out.fail(std::string(group_name(gi)) + " residual on " + u.to_string());
      }
    }
  }
  if (out.pass) out.detail = std::to_string(checks) + " zero residuals";
  return out;
}

// 5: D(u o dilation) = lambda^2 (D u) o dilation.
Outcome dilation_covariance() {
  Outcome out;
  auto groups = test_groups();
  std::size_t checks = 0;
  for (std::size_t gi = 0; gi < groups.size(); ++gi) {
    DifferentialOperator d = sublaplacian(groups[gi]);
    auto probes = monomials_up_to(groups[gi].dim(), 4);
    for (const Rational& lambda : {Rational(1, 2), Rational(2), Rational(3)}) {
      PolyMap delta = dilation(groups[gi], lambda);
      for (const auto& u : probes) {
        ++checks;
        if (d.apply(delta.pull_back(u)) != lambda * lambda * delta.pull_back(d.apply(u)))
          out.fail(std::string(group_name(gi)) + " lambda=" + to_string(lambda) + " on " + u.to_string());
      }
    }
  }
  if (out.pass) out.detail = std::to_string(checks) + " exact identities";
  return out;
}

PolyMap quotient_map(std::size_t n) {
  std::vector<std::string> components;
  for (std::size_t i = 1; i <= 2 * n; ++i) components.push_back("x" + std::to_string(i));
  return PolyMap::parse(2 * n + 1, components);
}

SubRiemannianGroup unit_heisenberg(std::size_t n) { return heisenberg_group(n, RatVector(n, Rational(1))); }

// 6: H^n -> R^2n, (v, z) -> v.
Outcome quotient_commutation() {
  Outcome out;
  for (std::size_t n : {1u, 2u}) {
    CommutationReport r =
        analyze_commutation(quotient_map(n), unit_heisenberg(n), SubRiemannianGroup::euclidean(2 * n), kProbeDegree);
    const std::string tag = "n=" + std::to_string(n);
    if (!r.conformal) out.fail(tag + " not conformal");
    if (!r.lambda_sq || *r.lambda_sq != Polynomial(1)) out.fail(tag + " lambda^2 != 1");
    for (const auto& b : r.b)
      if (!b.is_zero()) out.fail(tag + " b != 0");
    if (!r.residuals.empty()) out.fail(tag + " residuals present");
  }
  if (out.pass) out.detail = "n=1,2 conformal, lambda^2=1, b=0";
  return out;
}

// Orthonormal frame (columns) for the metric with Gram (F F^T)^{-1} on span(X_i, Y_i).
std::vector<RatVector> frame_vectors(const RatMatrix& f, std::size_t dim) {
  std::vector<RatVector> out;
  for (std::size_t c = 0; c < f.cols(); ++c) {
    RatVector v(dim);
    for (std::size_t r = 0; r < f.rows(); ++r) v[r] = f(r, c);
    out.push_back(v);
  }
  return out;
}

// 7: frame equivalence against the spectrum decision at rho = 1.
Outcome frame_equivalence() {
  Outcome out;
  // rotation by the Pythagorean angle (3/5, 4/5)
  const Rational c(3, 5), s(4, 5);
  std::vector<RatVector> x = {{Rational(1), Rational(0), Rational(0)}, {Rational(0), Rational(1), Rational(0)}};
  std::vector<RatVector> y = {{c, s, Rational(0)}, {-s, c, Rational(0)}};
  FrameEquivalence rotated = frames_equivalent(x, y);
  if (!rotated.equivalent || !rotated.witness || *rotated.witness * rotated.witness->transpose() != RatMatrix::identity(2))
    out.fail("rotated frame not accepted with an exact orthogonal witness");

  auto scaled_frame = [](const RatVector& r) {
    RatMatrix f(2 * r.size(), 2 * r.size());
    for (std::size_t i = 0; i < r.size(); ++i) f(i, i) = f(r.size() + i, r.size() + i) = r[i];
    return f;
  };
  RatVector r11 = {Rational(1), Rational(1)}, r12 = {Rational(1), Rational(2)};
  if (frames_equivalent(frame_vectors(scaled_frame(r11), 5), frame_vectors(scaled_frame(r12), 5)).equivalent)
    out.fail("r=(1,1) and r=(1,2) frames accepted");

  RandomRationals rng(107);
  int agree = 0, positives = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = rng.integer(1, 3), m = 2 * n;
    RatVector r;
    for (std::size_t i = 0; i < n; ++i) r.push_back(rng.positive(Rational(1, 2), Rational(4)));
    RatVector r2 = r;
    const bool same = trial % 2 == 0;
    if (!same) r2[rng.integer(0, n - 1)] *= Rational(3, 2);
    RatMatrix fx = scaled_frame(r) * cayley(rng, m);
    RatMatrix fy = scaled_frame(r2) * cayley(rng, m);
    bool equivalent = frames_equivalent(frame_vectors(fx, m + 1), frame_vectors(fy, m + 1)).equivalent;

    SymplecticForm w = SymplecticForm::standard(n);
    Metric gx(*inverse(fx * fx.transpose())), gy(*inverse(fy * fy.transpose()));
    auto rho = isometry_decision(w, gx, w, gy, kSpectrumTol);
    bool isometric = rho && std::abs(*rho - 1.0) <= kSpectrumTol;
    if (equivalent == isometric)
      ++agree;
    else
      out.fail("trial " + std::to_string(trial) + " disagrees");
    if (equivalent) ++positives;
  }
  if (out.pass)
    out.detail = "rotation exact, (1,1) vs (1,2) rejected, " + std::to_string(agree) + "/50 agree (" +
                 std::to_string(positives) + " equivalent), tol " + str(kSpectrumTol);
  return out;
}

// 8: the five characterizations of a homothetic projection agree.
Outcome homothetic_projection() {
  Outcome out;
  RandomRationals rng(108);
  int positives = 0, negatives = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const bool positive = trial < 100;
    // a nonzero map onto a line is always homothetic, so negatives need rank >= 2
    const std::size_t r = rng.integer(positive ? 1 : 2, 3), m = r + rng.integer(0, 2);
    RatMatrix av = random_invertible(rng, m), aw = random_invertible(rng, r);
    Metric gv(av.transpose() * av), gw(aw.transpose() * aw);
    Rational lambda = rng.positive(Rational(1, 4), Rational(4));
    RatMatrix head(r, m);
    for (std::size_t i = 0; i < r; ++i) head(i, i) = lambda;
    RatMatrix l = *inverse(aw) * head * cayley(rng, m) * av;
    if (!positive) {
      Rational delta = rng.next(1, 7);
      if (is_zero(delta)) delta = Rational(1, 7);
      l(rng.integer(0, r - 1), rng.integer(0, m - 1)) += delta;
    }
    auto reference = is_homothetic_projection(l, gv, gw);
    auto verdicts = homothetic_characterizations(l, gv, gw);
    for (std::size_t k = 0; k < verdicts.size(); ++k)
      if (verdicts[k] != reference) out.fail("trial " + std::to_string(trial) + " characterization " + std::to_string(k + 1));
    if (positive) {
      if (!reference || *reference != lambda * lambda)
        out.fail("trial " + std::to_string(trial) + " lambda^2 not recovered");
      else
        ++positives;
    } else if (reference) {
      out.fail("trial " + std::to_string(trial) + " perturbed map still homothetic");
    } else {
      ++negatives;
    }
  }
  if (out.pass)
    out.detail = "200 maps agree; " + std::to_string(positives) + "/100 exact lambda^2, " + std::to_string(negatives) +
                 "/100 perturbed rejected";
  return out;
}

// 9: spectrum of g_r equals r; scale law under omega -> zeta omega.
Outcome spectrum_ground_truth() {
  Outcome out;
  RandomRationals rng(109);
  double worst = 0, worst_scale = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = rng.integer(1, 4);
    RatVector r;
    for (std::size_t i = 0; i < n; ++i) r.push_back(rng.positive(Rational(1, 2), Rational(4)));
    std::sort(r.begin(), r.end());
    HeisenbergData d = heisenberg_data(heisenberg_group(n, r));
    auto s = symplectic_spectrum(d.omega, d.metric, kSpectrumTol).r;
    if (s.size() != n) {
      out.fail("trial " + std::to_string(trial) + " wrong length");
      continue;
    }
    for (std::size_t i = 0; i < n; ++i) worst = std::max(worst, std::abs(s[i] - r[i].get_d()));

    Rational zeta = rng.positive(Rational(1, 4), Rational(4));
    if (trial % 2) zeta = -zeta;
    auto zs = symplectic_spectrum(SymplecticForm(scaled(d.omega.matrix(), zeta)), d.metric, kSpectrumTol).r;
    const double factor = std::sqrt(std::abs(zeta.get_d()));
    for (std::size_t i = 0; i < n; ++i) worst_scale = std::max(worst_scale, std::abs(zs[i] - factor * s[i]));
  }
  if (worst > kSpectrumTol) out.fail("spectrum error " + str(worst));
  if (worst_scale > kSpectrumTol) out.fail("scale-law error " + str(worst_scale));
  if (out.pass)
    out.detail = "max error " + str(worst) + ", scale law " + str(worst_scale) + " (tol " + str(kSpectrumTol) + ")";
  return out;
}

// 10: the constructed isometry satisfies both congruences.
Outcome isometry_constructor() {
  Outcome out;
  RandomRationals rng(110);
  double worst_metric = 0, worst_form = 0;
  int built = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t m = 2 * rng.integer(1, 3);
    RatMatrix a = random_invertible(rng, m);
    Metric g1(a.transpose() * a);
    SymplecticForm w1(random_form(rng, m));
    RatMatrix psi0 = random_invertible(rng, m);
    Rational rho0 = rng.positive(Rational(1, 2), Rational(3));
    Metric g2(psi0.transpose() * g1.gram() * psi0);
    SymplecticForm w2(scaled(psi0.transpose() * w1.matrix() * psi0, 1 / (rho0 * rho0)));
    auto rho = isometry_decision(w1, g1, w2, g2, kSpectrumTol);
    if (!rho) {
      out.fail("trial " + std::to_string(trial) + ": matched pair not recognised");
      continue;
    }
    HeisenbergIsometry iso = build_isometry(w1, g1, w2, g2, kSpectrumTol);
    ++built;
    const Eigen::MatrixXd& psi = iso.psi;
    worst_metric = std::max(worst_metric, max_abs(psi.transpose() * to_eigen(g1.gram()) * psi - to_eigen(g2.gram())));
    worst_form = std::max(worst_form, max_abs(psi.transpose() * to_eigen(w1.matrix()) * psi -
                                              iso.rho * iso.rho * to_eigen(w2.matrix())));
  }
  if (worst_metric > kResidualTol) out.fail("metric residual " + str(worst_metric));
  if (worst_form > kResidualTol) out.fail("form residual " + str(worst_form));
  if (out.pass)
    out.detail = std::to_string(built) + "/50 built; residuals " + str(worst_metric) + ", " + str(worst_form) + " (tol " +
                 str(kResidualTol) + ")";
  return out;
}

struct MapCase {
  SubRiemannianGroup source, target;
  std::vector<std::string> components;
};

// 11: non-contact or non-conformal maps are rejected with a witness.
Outcome analyzer_rejection() {
  Outcome out;
  const SubRiemannianGroup h1 = testing::heisenberg1(), h2 = unit_heisenberg(2), engel = testing::engel();
  const SubRiemannianGroup r2 = SubRiemannianGroup::euclidean(2), r4 = SubRiemannianGroup::euclidean(4);
  const std::vector<MapCase> cases = {
      {h1, h1, {"x1", "x2", "x3 + x1"}},
      {h1, h1, {"x1", "x2", "x3 + x2"}},
      {h1, h1, {"x1", "x2", "x3 + x1^2"}},
      {h1, h1, {"x1", "x2", "3*x3"}},
      {h1, h1, {"x1 + x3", "x2", "x3"}},
      {h1, h1, {"2*x1", "x2", "2*x3"}},
      {h1, h1, {"x1", "2*x2", "2*x3"}},
      {h1, h1, {"x1", "x2^3", "x3"}},
      {h1, r2, {"x1", "2*x2"}},
      {h1, r2, {"x1 + x2", "x2"}},
      {h1, r2, {"x1^2", "x2"}},
      {h1, r2, {"x1 + x2^2", "x2"}},
      {h1, r2, {"x1", "x3"}},
      {h1, r2, {"x3", "x1"}},
      {engel, h1, {"x1", "x2", "x3 + x1"}},
      {engel, h1, {"x1", "2*x2", "2*x3"}},
      {h2, h2, {"2*x1", "x2", "2*x3", "x4", "2*x5"}},
      {h2, h2, {"x1", "x2", "x3", "x4", "x5 + x1"}},
      {h2, r4, {"x1", "x2", "2*x3", "x4"}},
      {h2, r4, {"x1 + x5", "x2", "x3", "x4"}},
  };
  int rejected = 0;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const auto& c = cases[i];
    CommutationReport r = analyze_commutation(PolyMap::parse(c.source.dim(), c.components), c.source, c.target,
                                              kProbeDegree);
    bool witness = std::any_of(r.residuals.begin(), r.residuals.end(),
                               [](const Residual& res) { return !res.value.is_zero(); });
    if (r.conformal || !witness)
      out.fail("map " + std::to_string(i + 1) + (r.conformal ? " accepted" : " has no nonzero residual"));
    else
      ++rejected;
  }
  if (out.pass) out.detail = std::to_string(rejected) + "/" + std::to_string(cases.size()) + " rejected with witnesses";
  return out;
}

// Conformal automorphism of H^n: similarity s * (rotation in each (X_i, Y_i) plane), z -> s^2 z.
PolyMap heisenberg_similarity(std::size_t n, const Rational& s, const std::vector<std::pair<Rational, Rational>>& cs) {
  RatMatrix m(2 * n + 1, 2 * n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& [c, sn] = cs[i];
    m(i, i) = m(n + i, n + i) = s * c;
    m(i, n + i) = -s * sn;
    m(n + i, i) = s * sn;
  }
  m(2 * n, 2 * n) = s * s;
  return PolyMap::linear(m);
}

// Engel automorphism e1 -> a e1, e2 -> eps a e2, e3 -> eps a^2 e3, e4 -> eps a^3 e4.
PolyMap engel_similarity(const Rational& a, int eps) {
  RatMatrix m(4, 4);
  m(0, 0) = a;
  m(1, 1) = eps * a;
  m(2, 2) = eps * a * a;
  m(3, 3) = eps * a * a * a;
  return PolyMap::linear(m);
}

// 12: b from b_vector equals P1 of the pullback operator, and vanishes for affine maps.
Outcome b_vector_consistency() {
  Outcome out;
  struct Accepted {
    std::string name;
    SubRiemannianGroup source, target;
    PolyMap f;
  };
  std::vector<Accepted> maps;
  auto groups = test_groups();
  for (std::size_t gi = 0; gi < groups.size(); ++gi)
    for (const Rational& lambda : {Rational(1, 2), Rational(2), Rational(3)})
      maps.push_back({std::string(group_name(gi)) + " dilation " + to_string(lambda), groups[gi], groups[gi],
                      dilation(groups[gi], lambda)});
  for (std::size_t n : {1u, 2u})
    maps.push_back({"quotient n=" + std::to_string(n), unit_heisenberg(n), SubRiemannianGroup::euclidean(2 * n),
                    quotient_map(n)});

  RandomRationals rng(112);
  for (int trial = 0; trial < 12; ++trial) {
    const std::size_t kind = trial % 3;
    const SubRiemannianGroup& g = groups[kind];
    NilpotentGroup calc(g);
    Rational s = rng.positive(Rational(1, 2), Rational(3));
    PolyMap phi;
    if (kind == 2) {
      phi = engel_similarity(s, rng.integer(0, 1) ? 1 : -1);
    } else {
      const std::size_t n = kind + 1;
      std::vector<std::pair<Rational, Rational>> cs;
      for (std::size_t i = 0; i < n; ++i) {
        RatMatrix o = cayley(rng, 2);
        cs.emplace_back(o(0, 0), o(1, 0));
      }
      phi = heisenberg_similarity(n, s, cs);
    }
    maps.push_back({std::string(group_name(kind)) + " automorphism*translation " + std::to_string(trial), g, g,
                    phi.after(calc.left_translation(rng.vector(g.dim())))});
  }

  for (const auto& m : maps) {
    CommutationReport r = analyze_commutation(m.f, m.source, m.target, kProbeDegree);
    if (!r.conformal || !r.lambda_sq) {
      out.fail(m.name + " not accepted");
      continue;
    }
    PolyVector b = b_vector(m.f, *r.lambda_sq, m.source, m.target);
    PolyVector p1 = pullback_operator(m.f, m.source, m.target).p1;
    if (b != p1) out.fail(m.name + ": b != P1");
    if (b != r.b) out.fail(m.name + ": b differs from the analyzer");
    if (!std::all_of(b.begin(), b.end(), [](const Polynomial& p) { return p.is_zero(); }))
      out.fail(m.name + ": b != 0 for an affine map");
  }
  if (out.pass) out.detail = std::to_string(maps.size()) + " accepted maps, b = P1 = 0";
  return out;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "algebra axioms", 1.0, algebra_axioms},
      {2, "BCH soundness", 2.0, bch_soundness},
      {3, "vector-field bracket compatibility", 1.0, bracket_compatibility},
      {4, "left invariance of the sub-Laplacian", 5.0, left_invariance},
      {5, "dilation covariance", 5.0, dilation_covariance},
      {6, "quotient commutation", 2.0, quotient_commutation},
      {7, "frame-equivalence decider", 5.0, frame_equivalence},
      {8, "homothetic projection characterizations", 2.0, homothetic_projection},
      {9, "symplectic spectrum ground truth", 3.0, spectrum_ground_truth},
      {10, "isometry constructor", 3.0, isometry_constructor},
      {11, "analyzer rejection", 3.0, analyzer_rejection},
      {12, "b-vector consistency", 2.0, b_vector_consistency},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = c.body();
    } catch (const std::exception& e) {
      outcome.fail(std::string("exception: ") + e.what());
    }
    double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (elapsed > c.limit_seconds) outcome.fail("took " + str(elapsed) + " s");
    if (!outcome.pass) ++failures;
    std::printf("AC%-2d %s  %s: %s [%.3f s, limit %.0f s]\n", c.id, outcome.pass ? "PASS" : "FAIL", c.title,
                outcome.detail.c_str(), elapsed, c.limit_seconds);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
