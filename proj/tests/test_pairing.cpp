#include <cmath>

#include "doctest.h"
#include "divpair/errors.hpp"
#include "divpair/literal.hpp"
#include "divpair/pairing.hpp"
#include "divpair/sampling.hpp"

using namespace divpair;

namespace {

const cdouble kI{0.0, 1.0};
const double kLog3 = 1.09861228866810969;

CurvePoint at(cdouble z) { return CurvePoint::affine(z); }

RationalFunction sphere_fn(std::vector<std::pair<CurvePoint, long long>> zp, cdouble c = 1.0) {
  return RationalFunction::make(CurveModel::sphere(), std::move(zp), c);
}

MarkedCurvePtr sphere_points(std::vector<cdouble> zs) {
  std::vector<CurvePoint> pts;
  for (auto z : zs) pts.push_back(at(z));
  return MarkedCurve::create(CurveModel::sphere(), pts);
}

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::Parse;
}

}  // namespace

TEST_CASE("weil symbol examples") {
  auto ctx = MarkedCurve::create(CurveModel::sphere());
  const auto f = sphere_fn({{at(0.0), 1}, {at(2.0), -1}});
  const auto g = sphere_fn({{at(1.0), 1}, {at(3.0), -1}});
  const cdouble a = weil_symbol(f, parse_divisor("1@1,-1@3", ctx));
  CHECK(std::abs(a - cdouble(-1.0 / 3.0)) < 1e-15);
  const cdouble b = weil_symbol(g, parse_divisor("1@0,-1@2", ctx));
  CHECK(std::abs(b - cdouble(-1.0 / 3.0)) < 1e-15);

  const auto c = sphere_fn({}, {2.5, -1.0});
  CHECK(weil_symbol(c, parse_divisor("1@1,-1@3,2@5,-2@7i", ctx)) == cdouble(1.0));

  // Infinity is part of div f on the sphere.
  const auto z = sphere_fn({{at(0.0), 1}});
  CHECK(kind_of([&] { weil_symbol(z, parse_divisor("1@inf,-1@1", ctx)); }) ==
        ErrorKind::NotDisjoint);
  CHECK(kind_of([&] { weil_symbol(f, parse_divisor("1@2,-1@1", ctx)); }) ==
        ErrorKind::NotDisjoint);
}

TEST_CASE("weil symbol rescaling relation") {
  Rng rng(41);
  for (int i = 0; i < 100; ++i) {
    auto [f, g] = random_function_pair(rng, CurveModel::sphere());
    auto [h, k] = random_function_pair(rng, CurveModel::sphere());
    const auto d = k.divisor();
    bool disjoint = true;
    for (const auto& t : d.terms()) {
      for (const auto* fn : {&f, &h}) {
        if (fn->divisor().contains(t.point)) disjoint = false;
        for (const auto& u : fn->divisor().terms()) {
          if (CurveModel::sphere().separation(u.point, t.point) < 1e-3) disjoint = false;
        }
      }
    }
    if (!disjoint) continue;
    const cdouble lhs = weil_symbol(f * h, d);
    const cdouble rhs = weil_symbol(f, d) * weil_symbol(h, d);
    CHECK(std::abs(lhs - rhs) <= 1e-10 * std::abs(rhs));
  }
}

TEST_CASE("weil reciprocity") {
  const auto f = sphere_fn({{at(0.0), 1}, {at(2.0), -1}});
  const auto g = sphere_fn({{at(1.0), 1}, {at(3.0), -1}});
  const auto r = check_weil_reciprocity(f, g);
  CHECK(r.residual < 1e-15);
  CHECK(std::abs(r.f_of_div_g - cdouble(-1.0 / 3.0)) < 1e-15);

  const auto c = sphere_fn({}, 7.0);
  CHECK(check_weil_reciprocity(c, g).residual == 0.0);

  Rng rng(42);
  double worst = 0.0;
  for (int i = 0; i < 500; ++i) {
    auto [a, b] = random_function_pair(rng, CurveModel::sphere());
    worst = std::max(worst, check_weil_reciprocity(a, b).residual);
  }
  CHECK(worst < 1e-9);

  const auto torus = CurveModel::torus(kI);
  worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    auto [a, b] = random_function_pair(rng, torus);
    worst = std::max(worst, check_weil_reciprocity(a, b).residual);
  }
  CHECK(worst < 1e-9);
}

TEST_CASE("elliptic functions are doubly periodic") {
  const cdouble tau{0.3, 1.1};
  const auto torus = CurveModel::torus(tau);
  const auto f = RationalFunction::make(
      torus, {{at(0.1), 1}, {at(0.6 + 0.3 * tau), 1}, {at(0.2 + 0.1 * tau), -1},
              {at(0.5 + 0.2 * tau), -1}});
  const cdouble z{0.37, 0.52};
  const cdouble v = f.value(at(z));
  CHECK(std::abs(f.value(at(z + 1.0)) - v) < 1e-11 * std::abs(v));
  CHECK(std::abs(f.value(at(z + tau)) - v) < 1e-11 * std::abs(v));

  // Ellipticity fails: the sum 0.3 is not a lattice point.
  CHECK(kind_of([&] {
          RationalFunction::make(torus, {{at(0.3), 1}, {at(0.0), -1}});
        }) == ErrorKind::InvalidArgument);
  CHECK(kind_of([&] { RationalFunction::make(torus, {{at(0.3), 1}}); }) ==
        ErrorKind::InvalidArgument);
}

TEST_CASE("pairing examples") {
  auto ctx = sphere_points({1.0, -1.0, 2.0, -2.0});
  const auto d1 = parse_divisor("1@Q1,-1@Q2", ctx);
  const auto d2 = parse_divisor("1@Q3,-1@Q4", ctx);
  for (auto formula : {PairingFormula::Ad, PairingFormula::AdSym, PairingFormula::Ad3}) {
    const auto r = pairing_norm(d1, d2, formula);
    CHECK(r.formula == formula);
    CHECK(std::abs(r.norm - 1.0 / 9.0) < 1e-14);
    CHECK(std::abs(r.exponent + 2.0 * kLog3) < 1e-14);
  }
  const auto r2 = pairing_norm(parse_divisor("2@Q1,-2@Q2", ctx), d2);
  CHECK(std::abs(r2.norm - 1.0 / 81.0) < 1e-14);

  // Real against imaginary coefficients pairs to norm 1.
  const auto r3 = pairing_norm(d1, parse_divisor("i@Q3,-i@Q4", ctx));
  CHECK(std::abs(r3.norm - 1.0) < 1e-15);
  CHECK(std::abs(r3.hermitian_value.real()) < 1e-15);

  // Marks and free points name the same divisor.
  const auto free1 = parse_divisor("1@1,-1@-1", ctx);
  CHECK(pairing_norm(free1, d2).norm == pairing_norm(d1, d2).norm);
}

TEST_CASE("pairing errors") {
  auto ctx = sphere_points({1.0, -1.0, 2.0, -2.0});
  const auto d1 = parse_divisor("1@Q1,-1@Q2", ctx);
  CHECK(kind_of([&] { pairing_norm(parse_divisor("1@Q1", ctx), d1); }) ==
        ErrorKind::DegreeMustBeZero);
  CHECK(kind_of([&] { pairing_norm(d1, parse_divisor("1@Q3", ctx)); }) ==
        ErrorKind::DegreeMustBeZero);
  CHECK(kind_of([&] { pairing_norm(d1, parse_divisor("1@Q1,-1@Q3", ctx)); }) ==
        ErrorKind::NotDisjoint);
  CHECK(kind_of([&] { pairing_norm(d1, parse_divisor("1@1.00000001,-1@5", ctx)); }) ==
        ErrorKind::NotDisjoint);
  auto other = sphere_points({1.0, -1.0, 2.0, -2.0, 5.0});
  CHECK(kind_of([&] { pairing_norm(d1, parse_divisor("1@Q3,-1@Q4", other)); }) ==
        ErrorKind::MismatchedContext);
  CHECK(kind_of([&] { hermitian_form(d1, parse_divisor("1@7,-1@8", ctx)); }) ==
        ErrorKind::SupportOutsideMarks);
  CHECK(parse_formula("adsym") == PairingFormula::AdSym);
  CHECK_FALSE(parse_formula("ad4").has_value());
  CHECK(formula_name(PairingFormula::Ad3) == "ad3");
}

TEST_CASE("formula equivalence and kernel shift") {
  Rng rng(43);
  for (int i = 0; i < 300; ++i) {
    const auto curve = random_curve(rng);
    auto inst = random_pairing_instance(rng, curve, rng.coin());
    const auto ev = evaluate_pairing(inst.d1, inst.d2);
    CHECK(ev.max_discrepancy() < 1e-12);
    CHECK(std::abs(ev.ad_imag) < 1e-12);
    CHECK(std::abs(ev.adsym_imag) < 1e-12);
    CHECK(std::abs(ev.ad3 - ev.hermitian_value.real()) < 1e-12);

    const double shift = rng.uniform(-5, 5);
    const auto base = pairing_norm(inst.d1, inst.d2);
    const auto moved = pairing_norm(inst.d1, inst.d2, PairingFormula::Ad3, {shift});
    CHECK(std::abs(moved.norm - base.norm) <= 1e-10 * base.norm);
    CHECK(base.norm > 0.0);
    CHECK(std::abs(base.norm - std::exp(base.exponent)) <= 1e-12 * base.norm);
  }
}

TEST_CASE("hermitian form is sesquilinear and conjugate symmetric") {
  Rng rng(44);
  for (int i = 0; i < 200; ++i) {
    auto inst = random_pairing_instance(rng, random_curve(rng), false);
    const cdouble h = hermitian_form(inst.d1, inst.d2);
    const cdouble hs = hermitian_form(inst.d2, inst.d1);
    CHECK(std::abs(h - std::conj(hs)) < 1e-12);
    const auto i_unit = GaussianRational::i();
    CHECK(std::abs(hermitian_form(divisor_scale(i_unit, inst.d1), inst.d2) - kI * h) < 1e-12);
    CHECK(std::abs(hermitian_form(inst.d1, divisor_scale(i_unit, inst.d2)) + kI * h) < 1e-12);
    const cdouble sum = hermitian_form(inst.d1 + inst.k, inst.d2);
    CHECK(std::abs(sum - h - hermitian_form(inst.k, inst.d2)) < 1e-12);
  }
  // Real coefficients give a real value.
  auto ctx = sphere_points({1.0, -1.0, 2.0, -2.0});
  const cdouble real = hermitian_form(parse_divisor("1@Q1,-1@Q2", ctx),
                                      parse_divisor("3@Q3,-3@Q4", ctx));
  CHECK(real.imag() == 0.0);
}

TEST_CASE("scaling laws") {
  auto ctx = sphere_points({1.0, -1.0, 2.0, -2.0});
  const auto d1 = parse_divisor("1@Q1,-1@Q2", ctx);
  const auto d2 = parse_divisor("1@Q3,-1@Q4", ctx);
  auto one = check_scaling_laws(d1, d2, 1);
  REQUIRE(one.real_power.has_value());
  CHECK(*one.real_power == 0.0);
  CHECK(one.conjugate_transfer == 0.0);
  auto two = check_scaling_laws(d1, d2, 2);
  CHECK(*two.real_power < 1e-14);

  Rng rng(45);
  const GaussianRational one_plus_i{Rational(1), Rational(1)};
  for (int i = 0; i < 200; ++i) {
    auto inst = random_pairing_instance(rng, random_curve(rng), false);
    const auto r = check_scaling_laws(inst.d1, inst.d2, one_plus_i);
    CHECK_FALSE(r.real_power.has_value());
    CHECK(r.conjugate_transfer < 1e-10);
    const auto half = check_scaling_laws(inst.d1, inst.d2, Rational(1, 2));
    CHECK(*half.real_power < 1e-10);
  }
  // Scaling an integral part by a non-integer is not a divisor.
  const auto mixed = parse_divisor("1@Q1,-1@5", ctx);
  CHECK(kind_of([&] { check_scaling_laws(mixed, d2, Rational(1, 2)); }) ==
        ErrorKind::NonIntegralOffMarks);
}

TEST_CASE("bimultiplicativity and symmetry") {
  auto ctx = sphere_points({1.0, -1.0, 2.0, -2.0});
  const auto d1 = parse_divisor("1@Q1,-1@Q2", ctx);
  const auto k = parse_divisor("1@Q3,-1@Q4", ctx);
  CHECK(check_bimultiplicativity(d1, ComplexDivisor(ctx), k) == 0.0);

  Rng rng(46);
  double sphere_worst = 0.0;
  double torus_worst = 0.0;
  double sym_worst = 0.0;
  const auto torus = CurveModel::torus({0.3, 1.1});
  for (int i = 0; i < 200; ++i) {
    auto s = random_pairing_instance(rng, CurveModel::sphere(), true);
    sphere_worst = std::max(sphere_worst, check_bimultiplicativity(s.d1, s.d2, s.k));
    auto t = random_pairing_instance(rng, torus, true);
    torus_worst = std::max(torus_worst, check_bimultiplicativity(t.d1, t.d2, t.k));
    sym_worst = std::max(sym_worst, check_symmetry(t.d1, t.k));
    sym_worst = std::max(sym_worst, check_symmetry(s.d1, s.d2));
  }
  CHECK(sphere_worst < 1e-12);
  CHECK(torus_worst < 1e-10);
  CHECK(sym_worst < 1e-12);
}

TEST_CASE("integral divisors: product of kernel powers") {
  Rng rng(47);
  for (int i = 0; i < 100; ++i) {
    const auto curve = random_curve(rng);
    auto ctx = MarkedCurve::create(curve);
    auto pts = random_points(rng, curve, 6, 0.2);
    const auto d1 = random_integral_divisor(rng, ctx, {pts[0], pts[1], pts[2]});
    const auto d2 = random_integral_divisor(rng, ctx, {pts[3], pts[4], pts[5]});
    if (d1.empty() || d2.empty()) continue;
    double product = 1.0;
    for (const auto& a : d1.integral_part()) {
      for (const auto& b : d2.integral_part()) {
        product *= std::pow(std::exp(green_kernel(curve, a.first, b.first)),
                            static_cast<double>(a.second * b.second));
      }
    }
    const auto r = pairing_norm(d1, d2);
    CHECK(std::abs(r.norm - product) <= 1e-12 * product);
  }
}

TEST_CASE("offdiagonal self pairing") {
  auto ctx = sphere_points({0.0, 3.0});
  const auto d = parse_divisor("1@Q1,-1@Q2", ctx);
  CHECK(std::abs(offdiagonal_self_pairing(d).norm - 1.0 / 9.0) < 1e-14);
  const auto di = parse_divisor("i@Q1,-i@Q2", ctx);
  CHECK(std::abs(offdiagonal_self_pairing(di).norm - 1.0 / 9.0) < 1e-14);
}
