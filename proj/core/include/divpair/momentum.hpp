#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "divpair/curve.hpp"
#include "divpair/divisor.hpp"

namespace divpair {

inline constexpr std::size_t kSpacetimeDim = 13;

using Momentum = std::array<cdouble, kSpacetimeDim>;

inline constexpr double kConservationTol = 1e-12;
inline constexpr double kMassShellTol = 1e-12;
inline constexpr std::int64_t kMomentumDenominator = 1'000'000'000;
inline constexpr double kRationalizedMassTol = 1e-9;
inline constexpr double kRationalizedConservationTol = 1e-9;

// Hermitian inner product sum_nu p^nu conj(q^nu).
cdouble hermitian_inner(const Momentum& p, const Momentum& q);

/// On-shell tachyon momenta in C^13: sum_i p_i = 0 and (p_i, p_i) = 1.
class MomentumConfig {
 public:
  // Throws ConservationViolated / MassShellViolated.
  static MomentumConfig make(std::vector<Momentum> momenta);

  const std::vector<Momentum>& momenta() const { return momenta_; }
  std::size_t size() const { return momenta_.size(); }

 private:
  explicit MomentumConfig(std::vector<Momentum> momenta) : momenta_(std::move(momenta)) {}
  std::vector<Momentum> momenta_;
};

/// Gaussian-rational momenta (denominator <= kMomentumDenominator) with
/// conservation re-imposed exactly through the last momentum.
std::vector<std::array<GaussianRational, kSpacetimeDim>> rationalize_momenta(
    const MomentumConfig& cfg);

/// D^nu = sum_i p_i^nu Q_i for nu in 1..13.
ComplexDivisor momentum_divisor(const MarkedCurvePtr& context, const MomentumConfig& cfg,
                                std::size_t nu);

struct StringFactor {
  double factor = 1.0;
  double exponent = 0.0;
  std::array<double, kSpacetimeDim> component_factor{};
  std::array<double, kSpacetimeDim> component_exponent{};
  // The i = j self-pairing terms diverge and are left out.
  bool diagonal_omitted = true;
};

/// exp(sum_{i != j} Re<p_i, p_j> g(Q_i, Q_j)) with the per-component split.
StringFactor string_pairing_factor(const MarkedCurvePtr& context, const MomentumConfig& cfg,
                                   const KernelOptions& opts = {});

}  // namespace divpair
