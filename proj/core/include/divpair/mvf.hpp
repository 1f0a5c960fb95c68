#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "divpair/curve.hpp"
#include "divpair/divisor.hpp"

namespace divpair {

/// Order A + n0 of a multiple-valued function, kept split so that sums are
/// exact: the integer part carries and 0 <= Re(fractional) < 1.
struct Order {
  long long integer = 0;
  cdouble fractional{};

  static Order normalized(cdouble exponent, long long integer_part);

  cdouble value() const { return fractional + static_cast<double>(integer); }

  friend Order operator+(const Order& a, const Order& b) {
    return normalized(a.fractional + b.fractional, a.integer + b.integer);
  }
  friend bool operator==(const Order&, const Order&) = default;
};

inline constexpr std::size_t kDefaultSeriesLength = 32;

/// Local model z^A * sum_{j >= n0} alpha_j z^j with 0 <= Re A < 1.
/// coeffs[0] is alpha_{n0} and is nonzero.
struct LocalExpansion {
  cdouble exponent{};
  long long leading_index = 0;
  std::vector<cdouble> coeffs;

  Order order() const { return {leading_index, exponent}; }
};

LocalExpansion normalize_expansion(cdouble exponent, long long leading_index,
                                   std::vector<cdouble> coeffs,
                                   std::size_t max_terms = kDefaultSeriesLength);

cdouble ord(const LocalExpansion& e);

LocalExpansion expansion_multiply(const LocalExpansion& a, const LocalExpansion& b);

/// The form z^A * sum_{j >= 0} beta_j z^j of a holomorphic multiple-valued
/// function, with either A = 0 or 0 < Re A <= 1. Empty when the expansion
/// has a pole or a non-removable singularity.
struct HolomorphicForm {
  cdouble exponent{};
  std::vector<cdouble> coeffs;
};
std::optional<HolomorphicForm> holomorphic_form(const LocalExpansion& e);

/// Monodromy exp(2 pi i n_{Q_i}) of the loop around mark `mark_index`
/// (0-based). Throws IndexOutOfRange.
cdouble multiplicator(const ComplexDivisor& d, std::size_t mark_index);

/// Two-set cover data: U1 is a neighbourhood of the disk B holding the
/// marks, U2 the complement of B. The transition f1/f2 is recorded through
/// the divisors its two factors realise on each set.
struct GlueingData {
  std::vector<cdouble> multiplicators;
  ComplexDivisor inside;   // part of the divisor carried by U1 (the marks)
  ComplexDivisor outside;  // part carried by U2 (integral points)
  GaussianRational marked_degree;
  cdouble boundary_monodromy;  // product of all multiplicators
  cdouble expected_boundary;   // exp(2 pi i * marked_degree)
  double audit_residual = 0.0;
};

GlueingData glueing_data(const ComplexDivisor& d);

/// a- and b-cycle monodromies of exp(integral of omega_D) on the torus,
/// omega_D = sum_P n_P (theta_1'/theta_1)(z - P) dz + c dz, integrated
/// along the boundary of a fundamental cell that encloses every point of
/// the support at its canonical lift.
struct MonodromyCertificate {
  cdouble base_point{};
  cdouble a_period_raw{};
  cdouble b_period_raw{};
  cdouble correction{};
  cdouble a_period{};
  cdouble b_period{};
  long long a_multiple = 0;  // a_period / (2 pi i)
  long long b_multiple = 0;
  double a_residual = 0.0;   // distance of a_period / (2 pi i) from Z
  double b_residual = 0.0;
  double contour_margin = 0.0;
  bool periods_integral = false;  // both residuals below kMonodromyTol
};

inline constexpr double kMonodromyTol = 1e-6;
inline constexpr double kAbelJacobiLatticeTol = 1e-8;

struct PrincipalityResult {
  bool principal = false;
  long long degree = 0;
  std::optional<AbelJacobiSum> abel_jacobi;
  double lattice_distance = 0.0;
  std::optional<MonodromyCertificate> monodromy;
};

/// Sphere: degree zero. Torus: degree zero and Abel-Jacobi sum in the
/// lattice; the monodromy certificate is computed for every degree-zero
/// torus divisor.
PrincipalityResult is_principal(const ComplexDivisor& d);

MonodromyCertificate torus_monodromy(const ComplexDivisor& d);

/// Global witness phi(z) = c * prod_j (z - P_j)^{n_j} on the sphere.
class SphereWitness {
 public:
  // Affine support only; infinity is implied with order -sum n_j.
  static SphereWitness from_divisor(const ComplexDivisor& d, cdouble constant = 1.0);

  // Exact orders at every point of the support, infinity included when its
  // order is nonzero.
  std::vector<std::pair<CurvePoint, GaussianRational>> orders() const;
  GaussianRational exact_order(const CurvePoint& p) const;

  // Local model at p (chart w = 1/z at infinity).
  LocalExpansion local_expansion(const CurvePoint& p,
                                 std::size_t terms = kDefaultSeriesLength) const;

  // Principal-branch evaluation at an affine point off the support.
  cdouble evaluate(cdouble z) const;

 private:
  struct Factor {
    cdouble point;
    GaussianRational exponent;
  };
  std::vector<Factor> factors_;
  cdouble constant_ = 1.0;
};

}  // namespace divpair
