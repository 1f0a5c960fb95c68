#pragma once

#include <complex>
#include <optional>
#include <string>

namespace divpair {

using cdouble = std::complex<double>;

class ComplexDivisor;

enum class CurveKind { Sphere, Torus };

/// A point of a curve. On the sphere a point is either affine or the point
/// at infinity; on the torus the coordinate is a representative in C taken
/// modulo the lattice Z + tau Z.
struct CurvePoint {
  cdouble z{};
  bool at_infinity = false;

  static CurvePoint infinity() { return {{}, true}; }
  static CurvePoint affine(cdouble z) { return {z, false}; }
};

// Identification tolerances for curve points.
inline constexpr double kSpherePointTol = 1e-12;
inline constexpr double kTorusPointTol = 1e-9;

/// Riemann sphere, or the complex torus C/(Z + tau Z) with Im(tau) > 0.
class CurveModel {
 public:
  static CurveModel sphere() { return CurveModel(CurveKind::Sphere, {}); }
  // Throws Error(InvalidArgument) unless Im(tau) > 0.
  static CurveModel torus(cdouble tau);

  CurveKind kind() const { return kind_; }
  bool is_torus() const { return kind_ == CurveKind::Torus; }
  cdouble tau() const { return tau_; }

  // Lattice coordinates (a, b) with z = a + b*tau.
  std::pair<double, double> lattice_coords(cdouble z) const;
  // Representative of z in the half-open cell {a + b tau : a, b in [0, 1)}.
  cdouble reduce(cdouble z) const;
  // Distance from z to the nearest lattice point (torus only).
  double lattice_distance(cdouble z) const;

  CurvePoint canonical(const CurvePoint& p) const;
  bool same_point(const CurvePoint& p, const CurvePoint& q) const;
  // Geodesic-free separation used for disjointness checks; infinite when
  // exactly one point is at infinity.
  double separation(const CurvePoint& p, const CurvePoint& q) const;

  std::string describe() const;

  friend bool operator==(const CurveModel&, const CurveModel&) = default;

 private:
  CurveModel(CurveKind kind, cdouble tau) : kind_(kind), tau_(tau) {}

  CurveKind kind_;
  cdouble tau_;
};

/// First Jacobi theta function theta_1(z | tau).
cdouble theta1(cdouble z, cdouble tau);

/// log|theta_1(z|tau)| - pi (Im z)^2 / Im tau, computed on the reduced
/// argument so large lattice shifts never overflow.
double log_abs_theta1_periodic(cdouble z, cdouble tau);

/// A logarithm of theta_1(z|tau) (branch unspecified), evaluated without
/// forming theta_1 itself so large arguments cannot overflow.
cdouble log_theta1(cdouble z, cdouble tau);

/// theta_1'(z|tau) / theta_1(z|tau).
cdouble theta1_log_derivative(cdouble z, cdouble tau);

struct KernelOptions {
  // Additive constant applied to every kernel value.
  double shift = 0.0;
};

/// Symmetric real Green kernel g(p, q): log|p - q| on the sphere and
/// log|theta_1(p - q)| - pi (Im(p - q))^2 / Im tau on the torus.
///
/// On the sphere a single point at infinity contributes 0 (affine-chart
/// convention); this is only meaningful inside degree-zero sums, where it
/// agrees with any metric-normalized kernel.
double green_kernel(const CurveModel& curve, const CurvePoint& p,
                    const CurvePoint& q, const KernelOptions& opts = {});

/// Coefficient-weighted kernel sum sum_j n_j g(z, P_j) for a degree-zero
/// divisor. Complex whenever the coefficients are.
cdouble green_divisor(const ComplexDivisor& d, const CurvePoint& z,
                      const KernelOptions& opts = {});

struct AbelJacobiSum {
  cdouble raw;      // sum_P n_P * coordinate(P)
  cdouble reduced;  // raw modulo the lattice, in the fundamental cell
};

/// Torus only; throws TrivialJacobian on the sphere.
AbelJacobiSum abel_jacobi_sum(const ComplexDivisor& d);

}  // namespace divpair
