#include "divpair/curve.hpp"
#include "divpair/divisor.hpp"
#include "divpair/errors.hpp"

namespace divpair {

cdouble green_divisor(const ComplexDivisor& d, const CurvePoint& z, const KernelOptions& opts) {
  if (degree(d) != 0) fail(ErrorKind::DegreeMustBeZero, "deg = " + std::to_string(degree(d)));
  if (d.contains(z)) fail(ErrorKind::DiagonalSingularity, "evaluation point in support");
  const CurveModel& curve = d.curve();
  cdouble total{};
  for (const auto& term : d.terms()) {
    total += term.coeff.to_complex() * green_kernel(curve, z, term.point, opts);
  }
  return total;
}

AbelJacobiSum abel_jacobi_sum(const ComplexDivisor& d) {
  const CurveModel& curve = d.curve();
  if (!curve.is_torus()) fail(ErrorKind::TrivialJacobian);
  cdouble raw{};
  for (const auto& term : d.terms()) raw += term.coeff.to_complex() * term.point.z;
  return {raw, curve.reduce(raw)};
}

}  // namespace divpair
