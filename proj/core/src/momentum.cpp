#include "divpair/momentum.hpp"

#include <cmath>
#include <string>

#include "divpair/errors.hpp"

namespace divpair {

cdouble hermitian_inner(const Momentum& p, const Momentum& q) {
  cdouble total{};
  for (std::size_t nu = 0; nu < kSpacetimeDim; ++nu) total += p[nu] * std::conj(q[nu]);
  return total;
}

MomentumConfig MomentumConfig::make(std::vector<Momentum> momenta) {
  Momentum total{};
  for (std::size_t i = 0; i < momenta.size(); ++i) {
    const double square = hermitian_inner(momenta[i], momenta[i]).real();
    if (std::abs(square - 1.0) > kMassShellTol) {
      fail(ErrorKind::MassShellViolated,
           "(p_" + std::to_string(i + 1) + ", p_" + std::to_string(i + 1) + ") = " +
               std::to_string(square));
    }
    for (std::size_t nu = 0; nu < kSpacetimeDim; ++nu) total[nu] += momenta[i][nu];
  }
  for (std::size_t nu = 0; nu < kSpacetimeDim; ++nu) {
    if (std::abs(total[nu]) > kConservationTol) {
      fail(ErrorKind::ConservationViolated,
           "component " + std::to_string(nu + 1) + " sums to " + std::to_string(std::abs(total[nu])));
    }
  }
  return MomentumConfig(std::move(momenta));
}

std::vector<std::array<GaussianRational, kSpacetimeDim>> rationalize_momenta(
    const MomentumConfig& cfg) {
  const auto& momenta = cfg.momenta();
  std::vector<std::array<GaussianRational, kSpacetimeDim>> out(momenta.size());
  if (momenta.empty()) return out;
  const std::size_t last = momenta.size() - 1;
  for (std::size_t nu = 0; nu < kSpacetimeDim; ++nu) {
    GaussianRational running;
    for (std::size_t i = 0; i < last; ++i) {
      out[i][nu] = GaussianRational::approximate(momenta[i][nu], kMomentumDenominator);
      running += out[i][nu];
    }
    out[last][nu] = -running;
    if (std::abs(out[last][nu].to_complex() - momenta[last][nu]) > kRationalizedConservationTol) {
      fail(ErrorKind::ConservationViolated, "component " + std::to_string(nu + 1));
    }
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    double square = 0.0;
    for (const auto& c : out[i]) square += std::norm(c.to_complex());
    if (std::abs(square - 1.0) > kRationalizedMassTol) {
      fail(ErrorKind::MassShellViolated, "rationalized p_" + std::to_string(i + 1));
    }
  }
  return out;
}

ComplexDivisor momentum_divisor(const MarkedCurvePtr& context, const MomentumConfig& cfg,
                                std::size_t nu) {
  if (nu < 1 || nu > kSpacetimeDim) {
    fail(ErrorKind::IndexOutOfRange, "nu = " + std::to_string(nu) + ", expected 1..13");
  }
  if (context->size() != cfg.size()) {
    fail(ErrorKind::InvalidArgument, std::to_string(cfg.size()) + " momenta for " +
                                         std::to_string(context->size()) + " marks");
  }
  const auto rational = rationalize_momenta(cfg);
  std::vector<DivisorTerm> terms;
  for (std::size_t i = 0; i < rational.size(); ++i) terms.push_back({i, rational[i][nu - 1]});
  return ComplexDivisor::make(context, terms);
}

StringFactor string_pairing_factor(const MarkedCurvePtr& context, const MomentumConfig& cfg,
                                   const KernelOptions& opts) {
  if (context->size() != cfg.size()) {
    fail(ErrorKind::InvalidArgument, std::to_string(cfg.size()) + " momenta for " +
                                         std::to_string(context->size()) + " marks");
  }
  const CurveModel& curve = context->curve();
  const auto& p = cfg.momenta();
  StringFactor out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = 0; j < p.size(); ++j) {
      if (i == j) continue;
      const double g = green_kernel(curve, context->mark(i), context->mark(j), opts);
      for (std::size_t nu = 0; nu < kSpacetimeDim; ++nu) {
        out.component_exponent[nu] += (p[i][nu] * std::conj(p[j][nu])).real() * g;
      }
      out.exponent += hermitian_inner(p[i], p[j]).real() * g;
    }
  }
  for (std::size_t nu = 0; nu < kSpacetimeDim; ++nu) {
    out.component_factor[nu] = std::exp(out.component_exponent[nu]);
  }
  out.factor = std::exp(out.exponent);
  return out;
}

}  // namespace divpair
