#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace divpair {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Exact complex number re + im*i with rational parts. Always stored in
/// lowest terms, so operator== is structural equality.
class GaussianRational {
 public:
  GaussianRational() = default;
  GaussianRational(Rational re, Rational im = Rational(0))
      : re_(std::move(re)), im_(std::move(im)) {}
  GaussianRational(long long value) : re_(value) {}  // NOLINT: implicit

  static GaussianRational i() { return {Rational(0), Rational(1)}; }

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }

  bool is_zero() const { return re_ == 0 && im_ == 0; }
  bool is_real() const { return im_ == 0; }
  bool is_integer() const;
  // Value as a 64-bit integer when it is one (and fits).
  std::optional<long long> as_integer() const;

  GaussianRational conj() const { return {re_, -im_}; }
  std::complex<double> to_complex() const;

  // Grammar form: "3", "-3/2", "1/2+2i", "-i", "2/3i".
  std::string to_string() const;

  // Closest Gaussian rational with both denominators <= max_denominator.
  static GaussianRational approximate(std::complex<double> value,
                                      std::int64_t max_denominator);

  GaussianRational operator-() const { return {-re_, -im_}; }
  GaussianRational& operator+=(const GaussianRational& o);
  GaussianRational& operator-=(const GaussianRational& o);
  GaussianRational& operator*=(const GaussianRational& o);
  GaussianRational& operator/=(const GaussianRational& o);

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

 private:
  Rational re_{0};
  Rational im_{0};
};

// Largest integer <= r.
BigInt floor_rational(const Rational& r);

// Best rational approximation of x with denominator <= max_denominator.
Rational approximate_rational(double x, std::int64_t max_denominator);

// exp(2*pi*i*n), with the real part of n reduced exactly modulo 1 first so
// integer n yields exactly 1 and quarter-integers hit exact axis values.
std::complex<double> exp_two_pi_i(const GaussianRational& n);

}  // namespace divpair
