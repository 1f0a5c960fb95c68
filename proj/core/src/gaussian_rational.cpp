#include "divpair/gaussian_rational.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace divpair {

namespace {

std::string rational_text(const Rational& r) {
  const BigInt num = boost::multiprecision::numerator(r);
  const BigInt den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

}  // namespace

BigInt floor_rational(const Rational& r) {
  const BigInt num = boost::multiprecision::numerator(r);
  const BigInt den = boost::multiprecision::denominator(r);
  BigInt q = num / den;  // truncates toward zero
  if (num < 0 && q * den != num) q -= 1;
  return q;
}

bool GaussianRational::is_integer() const {
  return im_ == 0 && boost::multiprecision::denominator(re_) == 1;
}

std::optional<long long> GaussianRational::as_integer() const {
  if (!is_integer()) return std::nullopt;
  const BigInt n = boost::multiprecision::numerator(re_);
  if (n > std::numeric_limits<long long>::max() ||
      n < std::numeric_limits<long long>::min()) {
    return std::nullopt;
  }
  return n.convert_to<long long>();
}

std::complex<double> GaussianRational::to_complex() const {
  return {re_.convert_to<double>(), im_.convert_to<double>()};
}

std::string GaussianRational::to_string() const {
  if (im_ == 0) return rational_text(re_);
  std::string imag;
  if (im_ == 1) {
    imag = "i";
  } else if (im_ == -1) {
    imag = "-i";
  } else {
    imag = rational_text(im_) + "i";
  }
  if (re_ == 0) return imag;
  if (imag.front() != '-') imag.insert(imag.begin(), '+');
  return rational_text(re_) + imag;
}

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
  Rational re = re_ * o.re_ - im_ * o.im_;
  Rational im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
  const Rational norm = o.re_ * o.re_ + o.im_ * o.im_;
  if (norm == 0) throw std::domain_error("division by zero Gaussian rational");
  Rational re = (re_ * o.re_ + im_ * o.im_) / norm;
  Rational im = (im_ * o.re_ - re_ * o.im_) / norm;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

Rational approximate_rational(double x, std::int64_t max_denominator) {
  if (!std::isfinite(x)) throw std::domain_error("cannot rationalize non-finite value");
  if (max_denominator < 1) throw std::domain_error("max_denominator must be positive");
  const Rational exact(x);  // binary doubles are exact rationals
  const BigInt limit(max_denominator);

  // Continued-fraction convergents h/k; stop before k exceeds the limit,
  // then compare against the best admissible semiconvergent.
  BigInt h_prev2 = 0, h_prev1 = 1;
  BigInt k_prev2 = 1, k_prev1 = 0;
  Rational rest = exact;
  while (true) {
    const BigInt a = floor_rational(rest);
    const BigInt h = a * h_prev1 + h_prev2;
    const BigInt k = a * k_prev1 + k_prev2;
    if (k > limit) {
      const BigInt t = (limit - k_prev2) / k_prev1;
      const Rational last(h_prev1, k_prev1);
      if (t > 0) {
        const Rational semi(t * h_prev1 + h_prev2, t * k_prev1 + k_prev2);
        if (abs(semi - exact) < abs(last - exact)) return semi;
      }
      return last;
    }
    h_prev2 = h_prev1;
    h_prev1 = h;
    k_prev2 = k_prev1;
    k_prev1 = k;
    const Rational frac = rest - Rational(a);
    if (frac == 0) return Rational(h, k);
    rest = 1 / frac;
  }
}

GaussianRational GaussianRational::approximate(std::complex<double> value,
                                               std::int64_t max_denominator) {
  return {approximate_rational(value.real(), max_denominator),
          approximate_rational(value.imag(), max_denominator)};
}

std::complex<double> exp_two_pi_i(const GaussianRational& n) {
  // phase = frac(Re n) in [0, 1); exact quarters map to exact axis points.
  const Rational frac = n.re() - Rational(floor_rational(n.re()));
  const double modulus = std::exp(-2.0 * std::numbers::pi * n.im().convert_to<double>());
  const Rational quarters = frac * 4;
  if (boost::multiprecision::denominator(quarters) == 1) {
    switch (boost::multiprecision::numerator(quarters).convert_to<int>()) {
      case 0: return {modulus, 0.0};
      case 1: return {0.0, modulus};
      case 2: return {-modulus, 0.0};
      default: return {0.0, -modulus};
    }
  }
  const double angle = 2.0 * std::numbers::pi * frac.convert_to<double>();
  return std::polar(modulus, angle);
}

}  // namespace divpair
