#include <cmath>
#include <numbers>

#include "doctest.h"
#include "divpair/curve.hpp"
#include "divpair/divisor.hpp"
#include "divpair/errors.hpp"
#include "divpair/literal.hpp"
#include "divpair/sampling.hpp"
#include "oracles.hpp"

using namespace divpair;

namespace {

constexpr double kPi = std::numbers::pi;
const cdouble kI{0.0, 1.0};

double relative(cdouble a, cdouble b) { return std::abs(a - b) / std::abs(b); }

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected divpair::Error");
  return ErrorKind::Parse;
}

}  // namespace

TEST_CASE("theta1 vanishes at the origin and is odd") {
  CHECK(std::abs(theta1(0.0, kI)) == doctest::Approx(0.0));
  Rng rng(11);
  for (int i = 0; i < 50; ++i) {
    const cdouble tau = random_tau(rng);
    const cdouble z{rng.uniform(-2, 2), rng.uniform(-2, 2)};
    CHECK(relative(theta1(-z, tau), -theta1(z, tau)) < 1e-12);
  }
}

TEST_CASE("theta1 matches frozen high-precision values") {
  // Reference values from an arbitrary-precision evaluation of the series.
  CHECK(relative(theta1({0.3, 0.1}, kI),
                 {0.773651221771173147323352042428, 0.172931536591592663012904375162}) < 1e-13);
  CHECK(relative(theta1({0.7, -0.4}, {0.3, 1.1}),
                 {1.06082558151085067034959589686, 1.06638458295111650673175323485}) < 1e-13);
  CHECK(relative(theta1({2.3, 1.7}, {0.2, 0.5}),
                 {92754572.0346807437765437511199, -24348640.8406246921111473710973}) < 1e-11);
}

TEST_CASE("theta1 agrees with the direct 200-term series") {
  CHECK(relative(theta1({0.3, 0.1}, kI), oracle::theta1_series({0.3, 0.1}, kI)) < 1e-12);
  Rng rng(12);
  for (int i = 0; i < 100; ++i) {
    const cdouble tau = random_tau(rng);
    const cdouble z{rng.uniform(-1, 1), rng.uniform(-0.5, 0.5) * tau.imag()};
    CHECK(relative(theta1(z, tau), oracle::theta1_series(z, tau)) < 1e-12);
  }
}

TEST_CASE("theta1 quasi-periodicity") {
  Rng rng(13);
  for (int i = 0; i < 100; ++i) {
    const cdouble tau = random_tau(rng);
    const cdouble z{rng.uniform(-1, 1), rng.uniform(-1, 1)};
    CHECK(relative(theta1(z + 1.0, tau), -theta1(z, tau)) < 1e-10);
    const cdouble factor = -std::exp(-kPi * kI * tau - 2.0 * kPi * kI * z);
    CHECK(relative(theta1(z + tau, tau), factor * theta1(z, tau)) < 1e-10);
  }
}

TEST_CASE("theta1 log derivative matches a finite difference") {
  Rng rng(14);
  for (int i = 0; i < 30; ++i) {
    const cdouble tau = random_tau(rng);
    const cdouble z{rng.uniform(0.1, 0.9), rng.uniform(-2, 2)};
    const double h = 1e-5;
    const cdouble fd = (theta1(z + h, tau) - theta1(z - h, tau)) / (2.0 * h) / theta1(z, tau);
    CHECK(std::abs(theta1_log_derivative(z, tau) - fd) < 1e-6 * (1.0 + std::abs(fd)));
  }
}

TEST_CASE("theta1 rejects the lower half plane") {
  CHECK(kind_of([] { theta1(0.1, {0.0, 0.0}); }) == ErrorKind::InvalidArgument);
  CHECK(kind_of([] { theta1(0.1, {0.3, -1.0}); }) == ErrorKind::InvalidArgument);
  CHECK(kind_of([] { CurveModel::torus({1.0, 0.0}); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("sphere kernel closed forms") {
  const auto s = CurveModel::sphere();
  CHECK(green_kernel(s, CurvePoint::affine(1.0), CurvePoint::affine(2.0)) == 0.0);
  CHECK(green_kernel(s, CurvePoint::affine(0.0), CurvePoint::affine(3.0)) ==
        doctest::Approx(1.0986122886681098).epsilon(1e-15));
  CHECK(kind_of([&] { green_kernel(s, CurvePoint::affine(2.0), CurvePoint::affine(2.0)); }) ==
        ErrorKind::DiagonalSingularity);
  CHECK(kind_of([&] { green_kernel(s, CurvePoint::infinity(), CurvePoint::infinity()); }) ==
        ErrorKind::DiagonalSingularity);
}

TEST_CASE("torus kernel matches the series oracle and detects lattice coincidence") {
  const auto t = CurveModel::torus(kI);
  CHECK(green_kernel(t, CurvePoint::affine(0.5), CurvePoint::affine(0.25)) ==
        doctest::Approx(-0.440693768218807157).epsilon(1e-13));
  CHECK(green_kernel(t, CurvePoint::affine({0.1, 0.3}), CurvePoint::affine(0.0)) ==
        doctest::Approx(-0.263672070248918001).epsilon(1e-13));
  // 1.5 is a lattice translate of 0.5.
  CHECK(kind_of([&] { green_kernel(t, CurvePoint::affine(0.5), CurvePoint::affine(1.5)); }) ==
        ErrorKind::DiagonalSingularity);
  // 0.5 + i is also a translate.
  CHECK(kind_of([&] {
          green_kernel(t, CurvePoint::affine(0.5), CurvePoint::affine({0.5, 1.0}));
        }) == ErrorKind::DiagonalSingularity);

  Rng rng(15);
  for (int i = 0; i < 50; ++i) {
    const auto curve = CurveModel::torus(random_tau(rng));
    const auto pts = random_points(rng, curve, 2, 0.1);
    const cdouble u = pts[0].z - pts[1].z;
    CHECK(std::abs(green_kernel(curve, pts[0], pts[1]) -
                   oracle::torus_kernel_series(u, curve.tau())) < 1e-11);
  }
}

TEST_CASE("kernel symmetry and torus periodicity") {
  Rng rng(16);
  for (int i = 0; i < 200; ++i) {
    const auto curve = random_curve(rng);
    const auto pts = random_points(rng, curve, 2, 0.05);
    const double gpq = green_kernel(curve, pts[0], pts[1]);
    CHECK(std::abs(gpq - green_kernel(curve, pts[1], pts[0])) < 1e-12);
    if (!curve.is_torus()) continue;
    for (int m = -2; m <= 2; ++m) {
      for (int n = -2; n <= 2; ++n) {
        const auto shifted = CurvePoint::affine(pts[0].z + static_cast<double>(m) +
                                                static_cast<double>(n) * curve.tau());
        CHECK(std::abs(green_kernel(curve, shifted, pts[1]) - gpq) < 1e-10);
      }
    }
  }
}

TEST_CASE("green_divisor closed forms and errors") {
  auto sphere = MarkedCurve::create(CurveModel::sphere(), {CurvePoint::affine(2.0),
                                                           CurvePoint::affine(-2.0)});
  const auto real_d = parse_divisor("1@2,-1@-2", sphere);
  CHECK(green_divisor(real_d, CurvePoint::affine(1.0)).real() ==
        doctest::Approx(std::log(1.0 / 3.0)).epsilon(1e-15));
  CHECK(green_divisor(real_d, CurvePoint::affine(1.0)).imag() == 0.0);

  const auto imag_d = parse_divisor("i@Q1,-i@Q2", sphere);
  const cdouble value = green_divisor(imag_d, CurvePoint::affine(1.0));
  CHECK(value.real() == 0.0);
  CHECK(value.imag() == doctest::Approx(std::log(1.0 / 3.0)).epsilon(1e-15));

  CHECK(green_divisor(ComplexDivisor(sphere), CurvePoint::affine(1.0)) == cdouble{});
  auto torus = MarkedCurve::create(CurveModel::torus(kI));
  CHECK(green_divisor(ComplexDivisor(torus), CurvePoint::affine({0.3, 0.3})) == cdouble{});

  CHECK(kind_of([&] { green_divisor(parse_divisor("1@2", sphere), CurvePoint::affine(1.0)); }) ==
        ErrorKind::DegreeMustBeZero);
  CHECK(kind_of([&] { green_divisor(real_d, CurvePoint::affine(2.0)); }) ==
        ErrorKind::DiagonalSingularity);
}

TEST_CASE("green_divisor: point at infinity inside a degree-zero divisor") {
  auto ctx = MarkedCurve::create(CurveModel::sphere());
  // 1@0 - 1@inf : the affine-chart sum is log|z|.
  const auto d = parse_divisor("1@0,-1@inf", ctx);
  CHECK(green_divisor(d, CurvePoint::affine(3.0)).real() ==
        doctest::Approx(std::log(3.0)).epsilon(1e-15));
  // Evaluating at infinity for an affine degree-zero divisor gives 0.
  CHECK(green_divisor(parse_divisor("1@1,-1@2", ctx), CurvePoint::infinity()) == cdouble{});
}

TEST_CASE("green_divisor harmonicity away from the support") {
  Rng rng(17);
  for (int i = 0; i < 60; ++i) {
    const auto curve = random_curve(rng);
    auto pts = random_points(rng, curve, 4, 0.2);
    auto ctx = MarkedCurve::create(curve);
    const auto d = random_integral_divisor(rng, ctx, {pts[0], pts[1], pts[2]});
    const cdouble z = pts[3].z;
    bool far = true;
    // Five-point truncation error is h^2 Re(sum n / (z - P)^4); 1e-4 alone is
    // not reachable at distance 0.1.
    double truncation = 0.0;
    for (const auto& t : d.terms()) {
      const double r = curve.separation(t.point, pts[3]);
      far = far && r >= 0.1;
      truncation += 2.0 * std::abs(t.coeff.to_complex()) * 1e-6 / std::pow(r, 4);
    }
    if (!far) continue;
    const double h = 1e-3;
    auto g = [&](cdouble w) { return green_divisor(d, CurvePoint::affine(w)).real(); };
    const double laplacian =
        (g(z + h) + g(z - h) + g(z + kI * h) + g(z - kI * h) - 4.0 * g(z)) / (h * h);
    CHECK(std::abs(laplacian) < std::max(1e-4, truncation));
  }
}

TEST_CASE("sphere green_divisor is invariant under translation and scaling") {
  Rng rng(18);
  for (int i = 0; i < 100; ++i) {
    auto pts = random_points(rng, CurveModel::sphere(), 4, 0.2);
    const cdouble c{rng.uniform(-2, 2), rng.uniform(-2, 2)};
    const cdouble s{rng.uniform(0.5, 2), rng.uniform(-1, 1)};
    std::vector<long long> coeffs{1, 2, -3};
    auto build = [&](auto map) {
      auto ctx = MarkedCurve::create(CurveModel::sphere());
      std::vector<DivisorTerm> terms;
      for (int k = 0; k < 3; ++k) {
        terms.push_back({CurvePoint::affine(map(pts[k].z)), GaussianRational(coeffs[k])});
      }
      return ComplexDivisor::make(ctx, terms);
    };
    const auto base = build([](cdouble w) { return w; });
    const auto moved = build([&](cdouble w) { return w + c; });
    const auto scaled = build([&](cdouble w) { return s * w; });
    const cdouble g0 = green_divisor(base, pts[3]);
    CHECK(std::abs(green_divisor(moved, CurvePoint::affine(pts[3].z + c)) - g0) < 1e-10);
    CHECK(std::abs(green_divisor(scaled, CurvePoint::affine(s * pts[3].z)) - g0) < 1e-10);
  }
}

TEST_CASE("green_divisor is linear in the divisor") {
  Rng rng(19);
  for (int i = 0; i < 100; ++i) {
    const auto curve = random_curve(rng);
    auto inst = random_pairing_instance(rng, curve, true);
    const auto probe = inst.context->mark(inst.context->size() - 1);
    const cdouble lhs = green_divisor(inst.d1 + inst.d2, probe);
    const cdouble rhs = green_divisor(inst.d1, probe) + green_divisor(inst.d2, probe);
    CHECK(std::abs(lhs - rhs) < 1e-12);
  }
}

TEST_CASE("abel_jacobi_sum examples") {
  auto torus = MarkedCurve::create(CurveModel::torus(kI), {CurvePoint::affine(0.5),
                                                           CurvePoint::affine(0.25)});
  const auto cancel = parse_divisor("1@0.3+0.2i,-1@0.3+0.2i", torus);
  CHECK(abel_jacobi_sum(cancel).raw == cdouble{});

  const auto real_pair = parse_divisor("1@0.25,-1@0.75", torus);
  CHECK(std::abs(abel_jacobi_sum(real_pair).raw - cdouble(-0.5)) < 1e-15);
  CHECK(std::abs(abel_jacobi_sum(real_pair).reduced - cdouble(0.5)) < 1e-15);

  const auto imag_pair = parse_divisor("i@Q1,-i@Q2", torus);
  CHECK(std::abs(abel_jacobi_sum(imag_pair).raw - cdouble(0.0, 0.25)) < 1e-15);

  auto sphere = MarkedCurve::create(CurveModel::sphere());
  CHECK(kind_of([&] { abel_jacobi_sum(ComplexDivisor(sphere)); }) == ErrorKind::TrivialJacobian);
}
