// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <random>
#include <vector>

#include "carnot/algebra.hpp"
#include "carnot/heisenberg.hpp"
#include "carnot/nilpotent.hpp"
#include "carnot/polynomial.hpp"

namespace carnot::testing {

// [X,Y] = Z on (X, Y, Z).
inline LieAlgebra heisenberg1_algebra() { return LieAlgebra::from_entries(3, {{0, 1, {{2, Rational(1)}}}}); }

inline SubRiemannianGroup heisenberg1() {
  return SubRiemannianGroup(heisenberg1_algebra(), Polarization::standard(3, 2), Metric::identity(2));
}

inline SubRiemannianGroup heisenberg2() { return heisenberg_group(2, {Rational(1), Rational(1)}); }

// [e1,e2] = e3, [e1,e3] = e4.
inline LieAlgebra engel_algebra() {
  return LieAlgebra::from_entries(4, {{0, 1, {{2, Rational(1)}}}, {0, 2, {{3, Rational(1)}}}});
}

inline SubRiemannianGroup engel() {
  return SubRiemannianGroup(engel_algebra(), Polarization::standard(4, 2), Metric::identity(2));
}

// [h,e] = 2e, [h,f] = -2f, [e,f] = h on (h, e, f).
inline std::vector<BracketEntry> sl2_entries() {
  return {{0, 1, {{1, Rational(2)}}}, {0, 2, {{2, Rational(-2)}}}, {1, 2, {{0, Rational(1)}}}};
}

class RandomRationals {
 public:
  explicit RandomRationals(std::uint64_t seed) : engine_(seed) {}

  /// num/den with |num| <= bound * den and den in [1, max_den].
  Rational next(long bound = 3, long max_den = 5) {
    std::uniform_int_distribution<long> den(1, max_den);
    long d = den(engine_);
    std::uniform_int_distribution<long> num(-bound * d, bound * d);
    Rational q(num(engine_), d);
    q.canonicalize();
    return q;
  }

  /// Positive rational in [lo, hi] with denominator <= max_den.
  Rational positive(const Rational& lo, const Rational& hi, long max_den = 8) {
    std::uniform_int_distribution<long> den(1, max_den);
    long d = den(engine_);
    mpz_class a = lo.get_num() * d, b = hi.get_num() * d, from_z, to_z;
    mpz_cdiv_q(from_z.get_mpz_t(), a.get_mpz_t(), lo.get_den().get_mpz_t());
    mpz_fdiv_q(to_z.get_mpz_t(), b.get_mpz_t(), hi.get_den().get_mpz_t());
    long from = from_z.get_si(), to = to_z.get_si();
    if (from > to) return lo;
    std::uniform_int_distribution<long> num(from, to);
    Rational q(num(engine_), d);
    q.canonicalize();
    return q;
  }

  RatVector vector(std::size_t n, long bound = 3, long max_den = 5) {
    RatVector v(n);
    for (auto& q : v) q = next(bound, max_den);
    return v;
  }

  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(engine_); }
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

/// Polynomial with `t` replaced by 0, where t is variable `var`.
inline Polynomial at_zero(const Polynomial& p, std::size_t var, std::size_t nvars) {
  PolyVector values = coordinate_polynomials(nvars);
  values[var] = Polynomial();
  return p.compose(values);
}

/// d/dt at t = 0.
inline Polynomial derivative_at_zero(const Polynomial& p, std::size_t var, std::size_t nvars) {
  return at_zero(p.derivative(var), var, nvars);
}

}  // namespace carnot::testing
