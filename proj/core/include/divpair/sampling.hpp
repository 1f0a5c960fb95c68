#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "divpair/divisor.hpp"
#include "divpair/momentum.hpp"
#include "divpair/pairing.hpp"

namespace divpair {

/// Deterministic generator (splitmix64); identical streams on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next();
  double uniform();  // [0, 1)
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  long long integer(long long lo, long long hi);  // inclusive
  double normal();
  bool coin() { return (next() >> 63) != 0; }

  Rng fork() { return Rng(next()); }

 private:
  std::uint64_t state_;
};

cdouble random_tau(Rng& rng);
CurveModel random_curve(Rng& rng);

// Affine points, pairwise separated by at least min_separation.
std::vector<CurvePoint> random_points(Rng& rng, const CurveModel& curve, std::size_t count,
                                      double min_separation);

GaussianRational random_gaussian_rational(Rng& rng, long long max_numerator,
                                          long long max_denominator);

// Degree-zero divisor on the given marks (coefficients Gaussian rationals
// with |re|, |im| <= 1 and denominators <= 4), last coefficient balancing.
ComplexDivisor random_marked_divisor(Rng& rng, const MarkedCurvePtr& context,
                                     const std::vector<std::size_t>& marks);

// Degree-zero integral divisor on the given points.
ComplexDivisor random_integral_divisor(Rng& rng, const MarkedCurvePtr& context,
                                       const std::vector<CurvePoint>& points);

/// A marked curve with disjoint mark groups and spare free points, used to
/// draw pairing operands.
struct PairingInstance {
  MarkedCurvePtr context;
  ComplexDivisor d1;
  ComplexDivisor d2;
  ComplexDivisor k;  // third operand, disjoint from d1 and d2
};

// with_integral_points mixes integer-coefficient free points into d1 and d2.
PairingInstance random_pairing_instance(Rng& rng, const CurveModel& curve,
                                        bool with_integral_points);

// Zeros and poles of two functions with pairwise disjoint divisors. On the
// torus the zero/pole moments sum to exactly zero.
std::pair<RationalFunction, RationalFunction> random_function_pair(Rng& rng,
                                                                   const CurveModel& curve);

/// Two torus divisors on shared marks. When `equivalent` is set they differ
/// by c(Q_a - Q_b) + P - R with P - R = -c(Q_a - Q_b) mod the lattice (plus
/// an elliptic divisor), otherwise P is pushed off by a non-lattice offset.
struct ClassPair {
  MarkedCurvePtr context;
  ComplexDivisor d1;
  ComplexDivisor d2;
  bool equivalent = false;
};

ClassPair random_class_pair(Rng& rng, const CurveModel& torus, bool equivalent);

using Unitary = std::array<std::array<cdouble, kSpacetimeDim>, kSpacetimeDim>;
Unitary random_unitary(Rng& rng);
Momentum apply(const Unitary& u, const Momentum& p);

// n in {2, 3, 4}: (u, -u), the 120-degree triple, or two back-to-back pairs,
// rotated by a random unitary.
MomentumConfig random_on_shell_config(Rng& rng, std::size_t n);

}  // namespace divpair
