#include "divpair/curve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "divpair/errors.hpp"

namespace divpair {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr cdouble kI{0.0, 1.0};
// Stop the triple product once every remaining factor is within this of 1.
constexpr double kProductTruncation = 1e-17;
constexpr int kMaxProductTerms = 100000;

void require_upper_half_plane(cdouble tau) {
  if (!(tau.imag() > 0.0) || !std::isfinite(tau.real()) || !std::isfinite(tau.imag())) {
    std::ostringstream os;
    os << "Im(tau) must be positive, got tau = " << tau;
    fail(ErrorKind::InvalidArgument, os.str());
  }
}

// z = w + n + k*tau with Im w in [0, Im tau) and Re w in [-1/2, 1/2).
struct ReducedArgument {
  cdouble w;
  long long k;
  long long n;
};

ReducedArgument reduce_theta_argument(cdouble z, cdouble tau) {
  const double k = std::floor(z.imag() / tau.imag());
  cdouble w = z - k * tau;
  if (w.imag() < 0.0) w.imag(0.0);
  const double n = std::floor(w.real() + 0.5);
  w -= n;
  return {w, static_cast<long long>(k), static_cast<long long>(n)};
}

// theta_1 on a reduced argument via the Jacobi triple product.
cdouble theta1_reduced(cdouble w, cdouble tau) {
  const cdouble q = std::exp(2.0 * kPi * kI * tau);
  const cdouble x = std::exp(2.0 * kPi * kI * w);
  const cdouble x_inv = 1.0 / x;
  const double reach = std::max({1.0, std::abs(x), std::abs(x_inv)});

  cdouble product = 2.0 * std::exp(kPi * kI * tau / 4.0) * std::sin(kPi * w);
  cdouble qn = q;
  for (int n = 1; n <= kMaxProductTerms; ++n) {
    if (std::abs(qn) * reach < kProductTruncation) break;
    product *= (1.0 - qn) * (1.0 - qn * x) * (1.0 - qn * x_inv);
    qn *= q;
  }
  return product;
}

cdouble theta1_log_derivative_reduced(cdouble w, cdouble tau) {
  const cdouble q = std::exp(2.0 * kPi * kI * tau);
  const cdouble x = std::exp(2.0 * kPi * kI * w);
  const cdouble x_inv = 1.0 / x;
  const double reach = std::max({1.0, std::abs(x), std::abs(x_inv)});

  cdouble sum = kPi * std::cos(kPi * w) / std::sin(kPi * w);
  cdouble qn = q;
  for (int n = 1; n <= kMaxProductTerms; ++n) {
    if (std::abs(qn) * reach < kProductTruncation) break;
    const cdouble a = qn * x_inv;
    const cdouble b = qn * x;
    sum += 2.0 * kPi * kI * (a / (1.0 - a) - b / (1.0 - b));
    qn *= q;
  }
  return sum;
}

}  // namespace

CurveModel CurveModel::torus(cdouble tau) {
  require_upper_half_plane(tau);
  return CurveModel(CurveKind::Torus, tau);
}

std::pair<double, double> CurveModel::lattice_coords(cdouble z) const {
  const double b = z.imag() / tau_.imag();
  const double a = z.real() - b * tau_.real();
  return {a, b};
}

cdouble CurveModel::reduce(cdouble z) const {
  if (kind_ != CurveKind::Torus) return z;
  auto wrap = [](double t) {
    double r = t - std::floor(t);
    if (r >= 1.0 - 1e-14) r = 0.0;
    return r;
  };
  const auto [a, b] = lattice_coords(z);
  return wrap(a) + wrap(b) * tau_;
}

double CurveModel::lattice_distance(cdouble z) const {
  const auto [a, b] = lattice_coords(z);
  const double a0 = std::round(a);
  const double b0 = std::round(b);
  double best = std::numeric_limits<double>::infinity();
  for (int dk = -2; dk <= 2; ++dk) {
    for (int dm = -2; dm <= 2; ++dm) {
      const cdouble lattice = (a0 + dm) + (b0 + dk) * tau_;
      best = std::min(best, std::abs(z - lattice));
    }
  }
  return best;
}

CurvePoint CurveModel::canonical(const CurvePoint& p) const {
  if (p.at_infinity) return CurvePoint::infinity();
  return CurvePoint::affine(reduce(p.z));
}

bool CurveModel::same_point(const CurvePoint& p, const CurvePoint& q) const {
  if (p.at_infinity || q.at_infinity) return p.at_infinity && q.at_infinity;
  if (kind_ == CurveKind::Sphere) return std::abs(p.z - q.z) <= kSpherePointTol;
  return lattice_distance(p.z - q.z) <= kTorusPointTol;
}

double CurveModel::separation(const CurvePoint& p, const CurvePoint& q) const {
  if (p.at_infinity || q.at_infinity) {
    return (p.at_infinity && q.at_infinity) ? 0.0
                                            : std::numeric_limits<double>::infinity();
  }
  if (kind_ == CurveKind::Sphere) return std::abs(p.z - q.z);
  return lattice_distance(p.z - q.z);
}

std::string CurveModel::describe() const {
  if (kind_ == CurveKind::Sphere) return "sphere";
  std::ostringstream os;
  os.precision(17);
  os << "torus(tau=" << tau_.real() << (tau_.imag() < 0 ? "" : "+") << tau_.imag() << "i)";
  return os.str();
}

cdouble theta1(cdouble z, cdouble tau) {
  require_upper_half_plane(tau);
  const ReducedArgument r = reduce_theta_argument(z, tau);
  const cdouble base = theta1_reduced(r.w, tau);
  if (r.k == 0) return ((r.n % 2) == 0) ? base : -base;
  // theta_1(w + n + k tau) = (-1)^(k+n) exp(-pi i k^2 tau - 2 pi i k w) theta_1(w)
  const double k = static_cast<double>(r.k);
  const cdouble factor = std::exp(-kPi * kI * k * k * tau - 2.0 * kPi * kI * k * r.w);
  const bool negate = ((r.k + r.n) % 2) != 0;
  return negate ? -(factor * base) : factor * base;
}

double log_abs_theta1_periodic(cdouble z, cdouble tau) {
  require_upper_half_plane(tau);
  const ReducedArgument r = reduce_theta_argument(z, tau);
  const double im = r.w.imag();
  return std::log(std::abs(theta1_reduced(r.w, tau))) - kPi * im * im / tau.imag();
}

cdouble log_theta1(cdouble z, cdouble tau) {
  require_upper_half_plane(tau);
  const ReducedArgument r = reduce_theta_argument(z, tau);
  const double k = static_cast<double>(r.k);
  const double sign = ((r.k + r.n) % 2 != 0) ? 1.0 : 0.0;
  return std::log(theta1_reduced(r.w, tau)) + kPi * kI * sign - kPi * kI * k * k * tau -
         2.0 * kPi * kI * k * r.w;
}

cdouble theta1_log_derivative(cdouble z, cdouble tau) {
  require_upper_half_plane(tau);
  const ReducedArgument r = reduce_theta_argument(z, tau);
  return theta1_log_derivative_reduced(r.w, tau) -
         2.0 * kPi * kI * static_cast<double>(r.k);
}

double green_kernel(const CurveModel& curve, const CurvePoint& p, const CurvePoint& q,
                    const KernelOptions& opts) {
  if (curve.kind() == CurveKind::Sphere) {
    if (p.at_infinity && q.at_infinity) {
      fail(ErrorKind::DiagonalSingularity, "both points at infinity");
    }
    if (p.at_infinity || q.at_infinity) return opts.shift;
    const double distance = std::abs(p.z - q.z);
    if (distance <= kSpherePointTol) fail(ErrorKind::DiagonalSingularity);
    return std::log(distance) + opts.shift;
  }

  if (p.at_infinity || q.at_infinity) {
    fail(ErrorKind::InvalidArgument, "the torus has no point at infinity");
  }
  if (curve.same_point(p, q)) fail(ErrorKind::DiagonalSingularity);
  // Fixed argument order makes g(p, q) and g(q, p) bitwise identical.
  const bool ordered = p.z.real() < q.z.real() ||
                       (p.z.real() == q.z.real() && p.z.imag() <= q.z.imag());
  const cdouble u = ordered ? p.z - q.z : q.z - p.z;
  return log_abs_theta1_periodic(u, curve.tau()) + opts.shift;
}

}  // namespace divpair
