// SPDX-License-Identifier: Apache-2.0
#include "carnot/nilpotent.hpp"

#include <algorithm>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>

namespace carnot {

namespace {

mpz_class factorial(unsigned n) {
  mpz_class f = 1;
  for (unsigned k = 2; k <= n; ++k) f *= k;
  return f;
}

// Dynkin's series:
//   log(e^X e^Y) = sum_n (-1)^{n-1}/n sum over (r_i, s_i), r_i + s_i > 0, of
//   [X^{r_1} Y^{s_1} ... X^{r_n} Y^{s_n}] / (m * prod r_i! s_i!)
// where m = sum (r_i + s_i) and the bracket is right-nested.
std::vector<BchTerm> generate_bch_terms(int step) {
  std::map<std::string, Rational> merged;
  for (int m = 1; m <= step; ++m) {
    std::string word;
    auto rec = [&](auto&& self, int remaining, int n, mpz_class denom) -> void {
      if (remaining == 0) {
        Rational c(mpz_class(n % 2 == 1 ? 1 : -1), mpz_class(denom * n * m));
        c.canonicalize();
        merged[word] += c;
        return;
      }
      for (int r = 0; r <= remaining; ++r)
        for (int s = 0; r + s <= remaining; ++s) {
          if (r + s == 0) continue;
          std::size_t mark = word.size();
          word.append(static_cast<std::size_t>(r), 'X');
          word.append(static_cast<std::size_t>(s), 'Y');
          self(self, remaining - r - s, n + 1, denom * factorial(r) * factorial(s));
          word.resize(mark);
        }
    };
    rec(rec, m, 0, mpz_class(1));
  }
  std::vector<BchTerm> terms;
  for (auto& [w, c] : merged) {
    if (is_zero(c)) continue;
    if (w.size() >= 2 && w[w.size() - 1] == w[w.size() - 2]) continue;  // innermost [a,a] = 0
    terms.push_back({w, c});
  }
  std::stable_sort(terms.begin(), terms.end(),
                   [](const BchTerm& a, const BchTerm& b) { return a.word.size() < b.word.size(); });
  return terms;
}

std::vector<BchTerm> linear_in_y(const std::vector<BchTerm>& terms) {
  std::vector<BchTerm> out;
  for (const auto& t : terms)
    if (std::count(t.word.begin(), t.word.end(), 'Y') == 1) out.push_back(t);
  return out;
}

}  // namespace

const std::vector<BchTerm>& bch_terms(int step) {
  if (step < 1) throw std::invalid_argument("BCH step must be positive");
  static std::shared_mutex mutex;
  static std::map<int, std::unique_ptr<const std::vector<BchTerm>>> cache;
  {
    std::shared_lock lock(mutex);
    auto it = cache.find(step);
    if (it != cache.end()) return *it->second;
  }
  auto terms = std::make_unique<const std::vector<BchTerm>>(generate_bch_terms(step));
  std::unique_lock lock(mutex);
  auto [it, inserted] = cache.try_emplace(step, std::move(terms));
  return *it->second;
}

NilpotentGroup::NilpotentGroup(LieAlgebra algebra) : algebra_(std::move(algebra)) {
  auto step = algebra_.nilpotency_step();
  if (!step) throw NotNilpotent("Lie algebra is not nilpotent");
  step_ = *step;
  const std::size_t n = dim();

  const auto linear = linear_in_y(bch_terms(step_));
  const PolyVector coords = coordinate_polynomials(n);
  frame_ = PolyMatrix(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    PolyVector col = evaluate_bch(algebra_, linear, coords, constant_vector(algebra_.basis_vector(j)));
    for (std::size_t i = 0; i < n; ++i) frame_(i, j) = std::move(col[i]);
  }

  // frame = I + K with K nilpotent (a polynomial in ad_p without constant
  // term), so the Neumann series terminates.
  PolyMatrix identity = PolyMatrix::identity(n);
  PolyMatrix minus_k = identity - frame_;
  coframe_ = identity;
  PolyMatrix power = identity;
  for (std::size_t k = 1; k <= n; ++k) {
    power = power * minus_k;
    if (std::all_of(power.data().begin(), power.data().end(), [](const Polynomial& p) { return p.is_zero(); })) break;
    coframe_ += power;
  }
  if (!(frame_ * coframe_ == identity)) throw std::logic_error("left-invariant frame inversion failed");
}

RatVector NilpotentGroup::product(const RatVector& p, const RatVector& q) const {
  if (p.size() != dim() || q.size() != dim()) throw DimensionMismatch("group product: point dimension differs");
  return evaluate_bch(algebra_, bch_terms(step_), p, q);
}

PolyVector NilpotentGroup::product(const PolyVector& p, const PolyVector& q) const {
  if (p.size() != dim() || q.size() != dim()) throw DimensionMismatch("group product: point dimension differs");
  return evaluate_bch(algebra_, bch_terms(step_), p, q);
}

RatVector NilpotentGroup::inverse(const RatVector& p) const {
  RatVector out = p;
  for (auto& q : out) q = -q;
  return out;
}

PolyVectorField NilpotentGroup::left_invariant_field(const RatVector& x) const {
  if (x.size() != dim()) throw DimensionMismatch("left_invariant_field: vector length differs from dim");
  return multiply<Polynomial>(frame_, x);
}

PolyMap NilpotentGroup::left_translation(const RatVector& a) const {
  return PolyMap(dim(), product(constant_vector(a), coordinate_polynomials(dim())));
}

Polynomial apply_field(const PolyVectorField& field, const Polynomial& u) {
  Polynomial out;
  for (std::size_t a = 0; a < field.size(); ++a) {
    if (field[a].is_zero()) continue;
    Polynomial d = u.derivative(a);
    if (!d.is_zero()) out += field[a] * d;
  }
  return out;
}

Polynomial coordinate_divergence(const PolyVectorField& field) {
  Polynomial out;
  for (std::size_t a = 0; a < field.size(); ++a) out += field[a].derivative(a);
  return out;
}

PolyVectorField field_commutator(const PolyVectorField& x, const PolyVectorField& y) {
  if (x.size() != y.size()) throw DimensionMismatch("field commutator: dimensions differ");
  PolyVectorField out(x.size());
  for (std::size_t c = 0; c < x.size(); ++c) out[c] = apply_field(x, y[c]) - apply_field(y, x[c]);
  return out;
}

PolyMatrix lie_differential(const PolyMap& f, const NilpotentGroup& source, const NilpotentGroup& target) {
  if (f.source_dim() != source.dim() || f.target_dim() != target.dim())
    throw DimensionMismatch("lie_differential: map dimensions differ from the groups");
  PolyMatrix back = f.pull_back(target.coframe());
  return back * (f.jacobian() * source.frame());
}

PolyVector SecondDifferential::apply(const RatVector& v, const RatVector& w) const {
  PolyVector out(components.size());
  for (std::size_t k = 0; k < components.size(); ++k) {
    const PolyMatrix& m = components[k];
    if (v.size() != m.rows() || w.size() != m.cols()) throw DimensionMismatch("second differential: vector length");
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (is_zero(v[i])) continue;
      for (std::size_t j = 0; j < m.cols(); ++j)
        if (!is_zero(w[j])) out[k] += (v[i] * w[j]) * m(i, j);
    }
  }
  return out;
}

SecondDifferential second_lie_differential(const PolyMap& f, const NilpotentGroup& source,
                                           const NilpotentGroup& target) {
  PolyMatrix df = lie_differential(f, source, target);
  const std::size_t n = source.dim();
  std::vector<PolyVectorField> fields;
  for (std::size_t j = 0; j < n; ++j) fields.push_back(source.frame().column(j));
  SecondDifferential out;
  for (std::size_t k = 0; k < target.dim(); ++k) {
    PolyMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = apply_field(fields[j], df(k, i));
    out.components.push_back(std::move(m));
  }
  return out;
}

PolyMap dilation(const SubRiemannianGroup& group, const Rational& lambda) {
  if (!group.strata()) throw NotStratifiable("dilations need a stratified group");
  std::vector<RatVector> columns;
  std::vector<Rational> weights;
  Rational factor = 1;
  for (const auto& layer : *group.strata()) {
    factor *= lambda;
    for (const auto& v : layer) {
      columns.push_back(v);
      weights.push_back(factor);
    }
  }
  const std::size_t n = group.dim();
  RatMatrix basis = RatMatrix::from_columns(columns, n);
  RatMatrix scaled_basis = basis;
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) scaled_basis(i, j) *= weights[j];
  return PolyMap::linear(scaled_basis * *inverse(basis));
}

}  // namespace carnot
