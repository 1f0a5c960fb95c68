#pragma once

#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "divpair/curve.hpp"
#include "divpair/divisor.hpp"

namespace divpair {

// Supports closer than this are treated as intersecting.
inline constexpr double kDisjointTol = 1e-7;

/// Single-valued meromorphic function given by its zeros and poles.
///
/// Sphere: c * prod (z - a)^m, with infinity carrying order -sum m.
/// Torus: c * exp(-2 pi i k z) * prod theta_1(z - a)^m, where sum m = 0 and
/// sum m*a = l + k*tau lies in the lattice (checked on construction).
class RationalFunction {
 public:
  static RationalFunction make(const CurveModel& curve,
                               std::vector<std::pair<CurvePoint, long long>> zeros_poles,
                               cdouble leading_constant = 1.0);

  const CurveModel& curve() const { return curve_; }
  const std::vector<std::pair<CurvePoint, long long>>& zeros_poles() const {
    return zeros_poles_;
  }
  cdouble leading_constant() const { return leading_; }

  // Principal divisor, infinity included on the sphere.
  ComplexDivisor divisor() const;

  // A logarithm of f(p); throws NotDisjoint at a zero or pole.
  cdouble log_value(const CurvePoint& p) const;
  cdouble value(const CurvePoint& p) const { return std::exp(log_value(p)); }

  friend RationalFunction operator*(const RationalFunction& f, const RationalFunction& g);

 private:
  RationalFunction(CurveModel curve) : curve_(curve) {}

  long long affine_degree() const;

  CurveModel curve_;
  std::vector<std::pair<CurvePoint, long long>> zeros_poles_;
  cdouble leading_ = 1.0;
  long long lattice_b_ = 0;  // k in sum m*a = l + k*tau
};

/// f(d) = prod f(P)^{n_P} for an integral divisor d disjoint from div f.
cdouble weil_symbol(const RationalFunction& f, const ComplexDivisor& d);

struct ReciprocityCheck {
  cdouble f_of_div_g;
  cdouble g_of_div_f;
  double residual;  // |f(div g) / g(div f) - 1|
};

ReciprocityCheck check_weil_reciprocity(const RationalFunction& f, const RationalFunction& g);

enum class PairingFormula { Ad, AdSym, Ad3 };
std::string_view formula_name(PairingFormula formula);
std::optional<PairingFormula> parse_formula(std::string_view name);

struct PairingResult {
  double norm = 1.0;
  double exponent = 0.0;  // log norm
  cdouble hermitian_value{};
  PairingFormula formula = PairingFormula::Ad3;
};

/// Every formula variant at once, for cross-checking.
struct PairingEvaluation {
  double ad = 0.0;
  double adsym = 0.0;
  double ad3 = 0.0;
  // Imaginary parts left over in the ad / adsym exponent sums.
  double ad_imag = 0.0;
  double adsym_imag = 0.0;
  cdouble hermitian_value{};

  double exponent(PairingFormula formula) const;
  double max_discrepancy() const;
};

/// Both divisors must have degree zero and disjoint supports.
PairingEvaluation evaluate_pairing(const ComplexDivisor& d1, const ComplexDivisor& d2,
                                   const KernelOptions& opts = {});

PairingResult pairing_norm(const ComplexDivisor& d1, const ComplexDivisor& d2,
                           PairingFormula formula = PairingFormula::Ad3,
                           const KernelOptions& opts = {});

/// sum_{i,j} n_i conj(n'_j) g(Q_i, Q_j) for degree-zero divisors on the marks.
cdouble hermitian_form(const ComplexDivisor& d1, const ComplexDivisor& d2,
                       const KernelOptions& opts = {});

struct ScalingResiduals {
  std::optional<double> real_power;  // |N(a d1, d2) - N(d1, d2)^a|, real a only
  double conjugate_transfer = 0.0;   // |N(a d1, d2) - N(d1, conj(a) d2)|
};

ScalingResiduals check_scaling_laws(const ComplexDivisor& d1, const ComplexDivisor& d2,
                                    const GaussianRational& alpha);

// |N(d1 + d2, k) - N(d1, k) N(d2, k)| / N(d1 + d2, k)
double check_bimultiplicativity(const ComplexDivisor& d1, const ComplexDivisor& d2,
                                const ComplexDivisor& k);

// |N(d1, d2) - N(d2, d1)| / N(d1, d2)
double check_symmetry(const ComplexDivisor& d1, const ComplexDivisor& d2);

/// exp(sum_{i != j} Re(n_i conj(n_j)) g(P_i, P_j)): the self-pairing with the
/// divergent diagonal terms omitted.
PairingResult offdiagonal_self_pairing(const ComplexDivisor& d, const KernelOptions& opts = {});

}  // namespace divpair
