#include "divpair/mvf.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "divpair/errors.hpp"

namespace divpair {

namespace {

constexpr cdouble kTwoPiI{0.0, 2.0 * std::numbers::pi};

// Taylor coefficients of exp(L(t)) given those of L(t).
std::vector<cdouble> exp_series(const std::vector<cdouble>& log_coeffs) {
  const std::size_t n = log_coeffs.size();
  std::vector<cdouble> out(n);
  out[0] = std::exp(log_coeffs[0]);
  for (std::size_t m = 1; m < n; ++m) {
    cdouble acc{};
    for (std::size_t s = 1; s <= m; ++s) {
      acc += static_cast<double>(s) * log_coeffs[s] * out[m - s];
    }
    out[m] = acc / static_cast<double>(m);
  }
  return out;
}

// Picks the left end of a unit window (x0, x0 + 1) that contains every
// `fixed` coordinate as given and stays as far as possible from all
// coordinates modulo 1.
double choose_window(const std::vector<double>& fixed, const std::vector<double>& all) {
  double lo = -1.0;
  double hi = 0.0;
  if (!fixed.empty()) {
    lo = *std::max_element(fixed.begin(), fixed.end()) - 1.0;
    hi = *std::min_element(fixed.begin(), fixed.end());
  }
  constexpr int kCandidates = 257;
  double best = lo + 0.5 * (hi - lo);
  double best_gap = -1.0;
  for (int s = 0; s < kCandidates; ++s) {
    const double x0 = lo + (hi - lo) * (s + 0.5) / kCandidates;
    double gap = std::numeric_limits<double>::infinity();
    for (double x : all) {
      const double d = std::abs(x - x0 - std::round(x - x0));
      gap = std::min(gap, d);
    }
    if (gap > best_gap) {
      best_gap = gap;
      best = x0;
    }
  }
  return best;
}

}  // namespace

Order Order::normalized(cdouble exponent, long long integer_part) {
  const double shift = std::floor(exponent.real());
  exponent.real(exponent.real() - shift);
  integer_part += static_cast<long long>(shift);
  if (exponent.real() >= 1.0) {
    exponent.real(exponent.real() - 1.0);
    integer_part += 1;
  }
  return {integer_part, exponent};
}

LocalExpansion normalize_expansion(cdouble exponent, long long leading_index,
                                   std::vector<cdouble> coeffs, std::size_t max_terms) {
  const auto first = std::find_if(coeffs.begin(), coeffs.end(),
                                  [](cdouble c) { return c != cdouble{}; });
  if (first == coeffs.end()) fail(ErrorKind::ZeroExpansion);
  leading_index += first - coeffs.begin();
  coeffs.erase(coeffs.begin(), first);
  if (max_terms > 0 && coeffs.size() > max_terms) coeffs.resize(max_terms);

  const Order o = Order::normalized(exponent, leading_index);
  return {o.fractional, o.integer, std::move(coeffs)};
}

cdouble ord(const LocalExpansion& e) { return e.order().value(); }

LocalExpansion expansion_multiply(const LocalExpansion& a, const LocalExpansion& b) {
  const std::size_t n = std::min(a.coeffs.size(), b.coeffs.size());
  std::vector<cdouble> product(n);
  for (std::size_t m = 0; m < n; ++m) {
    for (std::size_t s = 0; s <= m; ++s) product[m] += a.coeffs[s] * b.coeffs[m - s];
  }
  return normalize_expansion(a.exponent + b.exponent, a.leading_index + b.leading_index,
                             std::move(product), n);
}

std::optional<HolomorphicForm> holomorphic_form(const LocalExpansion& e) {
  long long padding = e.leading_index;
  cdouble exponent = e.exponent;
  if (exponent != cdouble{} && exponent.real() == 0.0) {
    exponent += 1.0;
    padding -= 1;
  }
  if (padding < 0) return std::nullopt;
  HolomorphicForm out{exponent, std::vector<cdouble>(static_cast<std::size_t>(padding))};
  out.coeffs.insert(out.coeffs.end(), e.coeffs.begin(), e.coeffs.end());
  return out;
}

cdouble multiplicator(const ComplexDivisor& d, std::size_t mark_index) {
  return exp_two_pi_i(d.mark_coefficient(mark_index));
}

GlueingData glueing_data(const ComplexDivisor& d) {
  std::vector<DivisorTerm> inside_terms;
  std::vector<DivisorTerm> outside_terms;
  GaussianRational marked_degree;
  for (const auto& [index, coeff] : d.marked_part()) {
    inside_terms.push_back({index, coeff});
    marked_degree += coeff;
  }
  for (const auto& [point, coeff] : d.integral_part()) {
    outside_terms.push_back({point, GaussianRational(coeff)});
  }

  std::vector<cdouble> multiplicators;
  cdouble product = 1.0;
  for (std::size_t i = 0; i < d.context().size(); ++i) {
    multiplicators.push_back(multiplicator(d, i));
    product *= multiplicators.back();
  }
  const cdouble expected = exp_two_pi_i(marked_degree);
  return GlueingData{std::move(multiplicators),
                     ComplexDivisor::make(d.context_ptr(), inside_terms),
                     ComplexDivisor::make(d.context_ptr(), outside_terms),
                     marked_degree,
                     product,
                     expected,
                     std::abs(product - expected)};
}

MonodromyCertificate torus_monodromy(const ComplexDivisor& d) {
  const CurveModel& curve = d.curve();
  if (!curve.is_torus()) fail(ErrorKind::TrivialJacobian);
  const cdouble tau = curve.tau();

  struct Source {
    double a, b;
    cdouble weight;
    bool fixed_lift;
  };
  std::vector<Source> sources;
  std::vector<double> fixed_a, fixed_b, all_a, all_b;
  for (const auto& term : d.terms()) {
    const auto [a, b] = curve.lattice_coords(curve.reduce(term.point.z));
    const bool fixed = !term.coeff.is_integer();
    sources.push_back({a, b, term.coeff.to_complex(), fixed});
    all_a.push_back(a);
    all_b.push_back(b);
    if (fixed) {
      fixed_a.push_back(a);
      fixed_b.push_back(b);
    }
  }
  const double a0 = choose_window(fixed_a, all_a);
  const double b0 = choose_window(fixed_b, all_b);

  std::vector<std::pair<cdouble, cdouble>> poles;  // (lifted point, weight)
  double margin = 0.5;
  for (const auto& s : sources) {
    const double a = s.a + std::floor(a0 + 1.0 - s.a);
    const double b = s.b + std::floor(b0 + 1.0 - s.b);
    margin = std::min({margin, a - a0, a0 + 1.0 - a, b - b0, b0 + 1.0 - b});
    poles.emplace_back(a + b * tau, s.weight);
  }

  auto omega = [&](cdouble z) {
    cdouble total{};
    for (const auto& [p, w] : poles) total += w * theta1_log_derivative(z - p, tau);
    return total;
  };

  // Composite Gauss-Kronrod with panels narrower than the distance to the
  // nearest pole. Adaptive refinement is no good here: its stopping rule is
  // relative to the result, and the a-period is often zero by cancellation.
  using Quadrature = boost::math::quadrature::gauss_kronrod<double, 31>;
  const double reach = std::max(margin * tau.imag() / std::max(1.0, std::abs(tau)), 1e-9);
  const int panels = static_cast<int>(std::clamp(std::ceil(2.0 / reach), 8.0, 200000.0));
  auto integrate = [&](auto&& f) {
    cdouble total{};
    for (int i = 0; i < panels; ++i) {
      total += Quadrature::integrate(f, static_cast<double>(i) / panels,
                                     static_cast<double>(i + 1) / panels, 0, 0.0);
    }
    return total;
  };
  const cdouble z0 = a0 + b0 * tau;

  MonodromyCertificate cert;
  cert.base_point = z0;
  cert.contour_margin = margin;
  cert.a_period_raw = integrate([&](double t) { return omega(z0 + t); });
  cert.b_period_raw = tau * integrate([&](double t) { return omega(z0 + t * tau); });

  // Add c dz with a-period in 2 pi i Z, choosing the integer that brings
  // the b-period closest to 2 pi i Z.
  const cdouble w = (cert.b_period_raw - cert.a_period_raw * tau) / kTwoPiI;
  const double k = std::round(w.imag() / tau.imag());
  cert.correction = -cert.a_period_raw - kTwoPiI * k;
  cert.a_period = cert.a_period_raw + cert.correction;
  cert.b_period = cert.b_period_raw + cert.correction * tau;

  const cdouble a_units = cert.a_period / kTwoPiI;
  const cdouble b_units = cert.b_period / kTwoPiI;
  cert.a_multiple = std::llround(a_units.real());
  cert.b_multiple = std::llround(b_units.real());
  cert.a_residual = std::abs(a_units - static_cast<double>(cert.a_multiple));
  cert.b_residual = std::abs(b_units - static_cast<double>(cert.b_multiple));
  cert.periods_integral = cert.a_residual < kMonodromyTol && cert.b_residual < kMonodromyTol;
  return cert;
}

PrincipalityResult is_principal(const ComplexDivisor& d) {
  PrincipalityResult out;
  out.degree = degree(d);
  if (!d.curve().is_torus()) {
    out.principal = out.degree == 0;
    return out;
  }
  out.abel_jacobi = abel_jacobi_sum(d);
  out.lattice_distance = d.curve().lattice_distance(out.abel_jacobi->raw);
  out.principal = out.degree == 0 && out.lattice_distance <= kAbelJacobiLatticeTol;
  if (out.degree == 0) out.monodromy = torus_monodromy(d);
  return out;
}

SphereWitness SphereWitness::from_divisor(const ComplexDivisor& d, cdouble constant) {
  if (d.curve().is_torus()) {
    fail(ErrorKind::InvalidArgument, "sphere witnesses need a sphere divisor");
  }
  if (constant == cdouble{}) fail(ErrorKind::InvalidArgument, "witness constant must be nonzero");
  SphereWitness w;
  w.constant_ = constant;
  for (const auto& term : d.terms()) {
    if (!term.point.at_infinity) w.factors_.push_back({term.point.z, term.coeff});
  }
  return w;
}

GaussianRational SphereWitness::exact_order(const CurvePoint& p) const {
  GaussianRational total;
  if (p.at_infinity) {
    for (const auto& f : factors_) total -= f.exponent;
    return total;
  }
  for (const auto& f : factors_) {
    if (std::abs(f.point - p.z) <= kSpherePointTol) total += f.exponent;
  }
  return total;
}

std::vector<std::pair<CurvePoint, GaussianRational>> SphereWitness::orders() const {
  std::vector<std::pair<CurvePoint, GaussianRational>> out;
  for (const auto& f : factors_) {
    out.emplace_back(CurvePoint::affine(f.point), exact_order(CurvePoint::affine(f.point)));
  }
  const GaussianRational at_infinity = exact_order(CurvePoint::infinity());
  if (!at_infinity.is_zero()) out.emplace_back(CurvePoint::infinity(), at_infinity);
  return out;
}

LocalExpansion SphereWitness::local_expansion(const CurvePoint& p, std::size_t terms) const {
  if (terms == 0) terms = 1;
  std::vector<cdouble> log_coeffs(terms);
  log_coeffs[0] = std::log(constant_);
  cdouble exponent{};

  if (p.at_infinity) {
    // phi = c w^{-sum n} prod (1 - P_k w)^{n_k} in the chart w = 1/z.
    for (const auto& f : factors_) {
      const cdouble n = f.exponent.to_complex();
      exponent -= n;
      cdouble power = 1.0;
      for (std::size_t m = 1; m < terms; ++m) {
        power *= f.point;
        log_coeffs[m] -= n * power / static_cast<double>(m);
      }
    }
  } else {
    for (const auto& f : factors_) {
      const cdouble n = f.exponent.to_complex();
      const cdouble delta = p.z - f.point;
      if (std::abs(delta) <= kSpherePointTol) {
        exponent += n;
        continue;
      }
      log_coeffs[0] += n * std::log(delta);
      cdouble inv_power = 1.0;
      for (std::size_t m = 1; m < terms; ++m) {
        inv_power /= delta;
        const double sign = (m % 2 == 1) ? 1.0 : -1.0;
        log_coeffs[m] += sign * n * inv_power / static_cast<double>(m);
      }
    }
  }
  return normalize_expansion(exponent, 0, exp_series(log_coeffs), terms);
}

cdouble SphereWitness::evaluate(cdouble z) const {
  cdouble log_value = std::log(constant_);
  for (const auto& f : factors_) {
    const cdouble delta = z - f.point;
    if (std::abs(delta) <= kSpherePointTol) fail(ErrorKind::DiagonalSingularity);
    log_value += f.exponent.to_complex() * std::log(delta);
  }
  return std::exp(log_value);
}

}  // namespace divpair
