#include "divpair/properties.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "divpair/curve.hpp"
#include "divpair/divisor.hpp"
#include "divpair/errors.hpp"
#include "divpair/momentum.hpp"
#include "divpair/mvf.hpp"
#include "divpair/pairing.hpp"
#include "divpair/sampling.hpp"

namespace divpair {

bool SelftestReport::pass() const {
  return std::all_of(rows.begin(), rows.end(), [](const PropertyRow& r) { return r.pass; });
}

namespace {

constexpr double kPi = std::numbers::pi;
const cdouble kI{0.0, 1.0};

double relative(cdouble a, cdouble b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }
double mismatch(bool ok) { return ok ? 0.0 : 1.0; }

// Reduces residuals of one property; `observe` returns the case residual.
class Suite {
 public:
  Suite(const SelftestOptions& options) : options_(options), master_(options.seed) {}

  void run(std::string module, std::string property, double threshold, std::size_t cases,
           const std::function<double(Rng&)>& observe) {
    PropertyRow row{std::move(module), std::move(property), cases, 0.0,
                    threshold * options_.tolerance_scale, true, {}};
    Rng rng = master_.fork();
    try {
      for (std::size_t i = 0; i < cases; ++i) {
        const double r = observe(rng);
        if (!(r <= row.max_residual)) row.max_residual = std::isnan(r) ? HUGE_VAL : r;
      }
    } catch (const std::exception& e) {
      row.error = e.what();
    }
    row.pass = row.error.empty() && row.max_residual <= row.threshold;
    rows_.push_back(std::move(row));
  }

  std::vector<PropertyRow> take() { return std::move(rows_); }

 private:
  SelftestOptions options_;
  Rng master_;
  std::vector<PropertyRow> rows_;
};

void curve_properties(Suite& suite, std::size_t n) {
  suite.run("curve", "kernel symmetry", 1e-12, n, [](Rng& rng) {
    const auto curve = random_curve(rng);
    const auto p = random_points(rng, curve, 2, 0.05);
    return std::abs(green_kernel(curve, p[0], p[1]) - green_kernel(curve, p[1], p[0]));
  });

  suite.run("curve", "torus periodicity m,n in -2..2", 1e-10, n, [](Rng& rng) {
    const auto curve = CurveModel::torus(random_tau(rng));
    const auto p = random_points(rng, curve, 2, 0.05);
    const double base = green_kernel(curve, p[0], p[1]);
    double worst = 0.0;
    for (int m = -2; m <= 2; ++m) {
      for (int k = -2; k <= 2; ++k) {
        const auto moved = CurvePoint::affine(p[0].z + static_cast<double>(m) +
                                              static_cast<double>(k) * curve.tau());
        worst = std::max(worst, std::abs(green_kernel(curve, moved, p[1]) - base));
      }
    }
    return worst;
  });

  // The five-point stencil has truncation error h^2 Re(sum n/(z-P)^4), up to
  // 1e-2 at distance 0.1; the residual is the excess over that bound.
  suite.run("curve", "harmonicity of degree-0 green_divisor (excess over stencil truncation)",
            1e-4, n, [](Rng& rng) {
              const auto curve = random_curve(rng);
              const auto pts = random_points(rng, curve, 4, 0.1);
              auto ctx = MarkedCurve::create(curve);
              const auto d = random_integral_divisor(rng, ctx, {pts[0], pts[1], pts[2]});
              const double h = 1e-3;
              double bound = 0.0;
              for (const auto& t : d.terms()) {
                bound += 2.0 * std::abs(t.coeff.to_complex()) * h * h /
                         std::pow(curve.separation(t.point, pts[3]), 4);
              }
              auto g = [&](cdouble w) { return green_divisor(d, CurvePoint::affine(w)).real(); };
              const cdouble z = pts[3].z;
              const double lap =
                  (g(z + h) + g(z - h) + g(z + kI * h) + g(z - kI * h) - 4.0 * g(z)) / (h * h);
              return std::max(0.0, std::abs(lap) - bound);
            });

  suite.run("curve", "sphere translation and scaling invariance", 1e-10, n, [](Rng& rng) {
    const auto sphere = CurveModel::sphere();
    const auto pts = random_points(rng, sphere, 4, 0.2);
    const cdouble c{rng.uniform(-2, 2), rng.uniform(-2, 2)};
    const cdouble s{rng.uniform(0.5, 2), rng.uniform(-1, 1)};
    auto ctx = MarkedCurve::create(sphere);
    Rng coeffs = rng.fork();
    Rng coeffs_copy = coeffs;
    const auto d = random_integral_divisor(coeffs, ctx, {pts[0], pts[1], pts[2]});
    auto moved = [&](auto map) {
      std::vector<CurvePoint> q;
      for (std::size_t i = 0; i < 3; ++i) q.push_back(CurvePoint::affine(map(pts[i].z)));
      Rng same = coeffs_copy;
      return random_integral_divisor(same, ctx, q);
    };
    const double base = green_divisor(d, pts[3]).real();
    const auto tr = [&](cdouble z) { return z + c; };
    const auto sc = [&](cdouble z) { return s * z; };
    const double a = green_divisor(moved(tr), CurvePoint::affine(tr(pts[3].z))).real();
    const double b = green_divisor(moved(sc), CurvePoint::affine(sc(pts[3].z))).real();
    return std::max(std::abs(a - base), std::abs(b - base));
  });

  suite.run("curve", "green_divisor linearity", 1e-12, n, [](Rng& rng) {
    const auto curve = random_curve(rng);
    const auto pts = random_points(rng, curve, 5, 0.1);
    auto ctx = MarkedCurve::create(curve);
    const auto d1 = random_integral_divisor(rng, ctx, {pts[0], pts[1]});
    const auto d2 = random_integral_divisor(rng, ctx, {pts[2], pts[3]});
    const cdouble sum = green_divisor(d1 + d2, pts[4]);
    return std::abs(sum - green_divisor(d1, pts[4]) - green_divisor(d2, pts[4]));
  });

  suite.run("curve", "theta1 quasi-periodicity", 1e-10, n, [](Rng& rng) {
    const cdouble tau = random_tau(rng);
    const cdouble z{rng.uniform(-1, 1), rng.uniform(-1, 1)};
    const cdouble t = theta1(z, tau);
    const cdouble factor = -std::exp(-kPi * kI * tau - 2.0 * kPi * kI * z);
    return std::max(relative(theta1(z + 1.0, tau), -t), relative(theta1(z + tau, tau), factor * t));
  });
}

void divisor_properties(Suite& suite, std::size_t n) {
  suite.run("divisor", "group laws (associativity, identity, inverse)", 0.0, n, [](Rng& rng) {
    auto inst = random_pairing_instance(rng, random_curve(rng), true);
    const ComplexDivisor zero(inst.context);
    const auto& [ctx, a, b, c] = inst;
    (void)ctx;
    const bool ok = (a + b) + c == a + (b + c) && a + zero == a && (a - a).empty() &&
                    a + b == b + a;
    return mismatch(ok);
  });

  suite.run("divisor", "divisor_scale multiplicative", 0.0, n, [](Rng& rng) {
    auto inst = random_pairing_instance(rng, random_curve(rng), false);
    const auto alpha = random_gaussian_rational(rng, 3, 3);
    const auto beta = random_gaussian_rational(rng, 3, 3);
    return mismatch(divisor_scale(alpha * beta, inst.d1) ==
                    divisor_scale(alpha, divisor_scale(beta, inst.d1)));
  });

  suite.run("divisor", "degree homomorphism", 0.0, n, [](Rng& rng) {
    const auto curve = random_curve(rng);
    const auto pts = random_points(rng, curve, 4, 0.05);
    auto ctx = MarkedCurve::create(curve, {pts[0], pts[1]});
    const auto a = random_marked_divisor(rng, ctx, {0, 1}) +
                   ComplexDivisor::make(ctx, {{pts[2], rng.integer(-3, 3)},
                                              {std::size_t{0}, rng.integer(-3, 3)}});
    const auto b = random_marked_divisor(rng, ctx, {1, 0}) +
                   ComplexDivisor::make(ctx, {{pts[3], rng.integer(-3, 3)}});
    return mismatch(degree(a + b) == degree(a) + degree(b));
  });

  suite.run("divisor", "class_invariant additive (torus mod lattice)", 1e-9, n, [](Rng& rng) {
    auto inst = random_pairing_instance(rng, random_curve(rng), true);
    const auto lhs = class_invariant(inst.d1 + inst.d2);
    const auto rhs = class_invariant(inst.d1).combine(class_invariant(inst.d2));
    if (lhs.degree != rhs.degree) return 1.0;
    if (!lhs.jacobian) return 0.0;
    return inst.context->curve().lattice_distance(*lhs.jacobian - *rhs.jacobian);
  });
}

LocalExpansion random_expansion(Rng& rng, std::size_t length) {
  std::vector<cdouble> coeffs(length);
  for (auto& c : coeffs) c = {rng.uniform(-1, 1), rng.uniform(-1, 1)};
  coeffs[0] += 2.0;
  return normalize_expansion({rng.uniform(-3, 3), rng.uniform(-2, 2)}, rng.integer(-4, 4),
                             coeffs);
}

void mvf_properties(Suite& suite, std::size_t n) {
  const std::size_t expansions = std::max<std::size_t>(n, 1000);
  suite.run("mvf", "ord additive under expansion_multiply (exact)", 0.0, expansions, [](Rng& rng) {
    const auto a = random_expansion(rng, 8);
    const auto b = random_expansion(rng, 8);
    return mismatch(expansion_multiply(a, b).order() == a.order() + b.order());
  });

  suite.run("mvf", "normalization idempotent (exact)", 0.0, expansions, [](Rng& rng) {
    const auto a = random_expansion(rng, 8);
    const auto b = normalize_expansion(a.exponent, a.leading_index, a.coeffs);
    return mismatch(a.exponent == b.exponent && a.leading_index == b.leading_index &&
                    a.coeffs == b.coeffs);
  });

  suite.run("mvf", "sphere witness residue sum (exact)", 0.0, std::max<std::size_t>(n, 200),
            [](Rng& rng) {
              auto inst = random_pairing_instance(rng, CurveModel::sphere(), true);
              const auto w = SphereWitness::from_divisor(inst.d1 + inst.d2,
                                                         {rng.uniform(0.5, 2), rng.uniform(-1, 1)});
              GaussianRational total;
              for (const auto& [p, o] : w.orders()) total += o;
              return mismatch(total.is_zero());
            });

  suite.run("mvf", "multiplicator homomorphism (relative)", 1e-12, n, [](Rng& rng) {
    auto inst = random_pairing_instance(rng, random_curve(rng), true);
    const auto sum = inst.d1 + inst.k;
    double worst = 0.0;
    for (std::size_t m = 0; m < inst.context->size(); ++m) {
      worst = std::max(worst, relative(multiplicator(sum, m),
                                       multiplicator(inst.d1, m) * multiplicator(inst.k, m)));
    }
    return worst;
  });

  suite.run("mvf", "integral divisors have trivial multiplicators (exact)", 0.0, n, [](Rng& rng) {
    const auto curve = random_curve(rng);
    const auto pts = random_points(rng, curve, 3, 0.1);
    auto ctx = MarkedCurve::create(curve, pts);
    std::vector<DivisorTerm> terms;
    long long total = 0;
    for (std::size_t i = 0; i < 3; ++i) {
      const long long c = rng.integer(-3, 3);
      total += c;
      terms.push_back({i, c});
    }
    const auto d = ComplexDivisor::make(ctx, terms);
    bool ok = true;
    for (auto m : glueing_data(d).multiplicators) ok = ok && m == cdouble(1.0);
    (void)total;
    return mismatch(ok);
  });

  const std::size_t oracle_cases = std::min<std::size_t>(n, 100);
  suite.run("mvf", "principal divisors form a subgroup", 0.0, oracle_cases, [](Rng& rng) {
    const auto torus = CurveModel::torus(random_tau(rng));
    const auto a = random_class_pair(rng, torus, true);
    // second principal divisor: an elliptic function's zeros and poles
    const auto f = random_function_pair(rng, torus).first;
    std::vector<DivisorTerm> terms;
    for (const auto& [p, m] : f.zeros_poles()) terms.push_back({p, m});
    const auto da = a.d2 - a.d1;
    const auto db = ComplexDivisor::make(a.context, terms);
    const bool premise = is_principal(da).principal && is_principal(db).principal;
    return mismatch(!premise || is_principal(da + db).principal);
  });

  suite.run("mvf", "class_invariant equality <=> is_principal, oracle-validated", 0.0,
            oracle_cases, [](Rng& rng) {
              const auto torus = CurveModel::torus(random_tau(rng));
              const auto pair = random_class_pair(rng, torus, rng.coin());
              const bool same = class_invariant(pair.d1).equivalent(class_invariant(pair.d2));
              const auto verdict = is_principal(pair.d1 - pair.d2);
              const bool oracle = verdict.monodromy && verdict.monodromy->periods_integral;
              return mismatch(same == pair.equivalent && verdict.principal == same &&
                              oracle == same);
            });
}

void pairing_properties(Suite& suite, std::size_t n) {
  suite.run("pairing", "formula equivalence ad/adsym/ad3", 1e-12, n, [](Rng& rng) {
    auto inst = random_pairing_instance(rng, random_curve(rng), rng.coin());
    return evaluate_pairing(inst.d1, inst.d2).max_discrepancy();
  });

  suite.run("pairing", "kernel-constant independence (relative)", 1e-10, n, [](Rng& rng) {
    auto inst = random_pairing_instance(rng, random_curve(rng), rng.coin());
    const double base = pairing_norm(inst.d1, inst.d2).norm;
    const double moved =
        pairing_norm(inst.d1, inst.d2, PairingFormula::Ad3, {rng.uniform(-5, 5)}).norm;
    return std::abs(moved - base) / base;
  });

  suite.run("pairing", "weil reciprocity (sphere)", 1e-9, std::max<std::size_t>(n, 500),
            [](Rng& rng) {
              auto [f, g] = random_function_pair(rng, CurveModel::sphere());
              return check_weil_reciprocity(f, g).residual;
            });

  suite.run("pairing", "weil reciprocity (torus)", 1e-9, std::max<std::size_t>(n / 5, 100),
            [](Rng& rng) {
              auto [f, g] = random_function_pair(rng, CurveModel::torus(random_tau(rng)));
              return check_weil_reciprocity(f, g).residual;
            });

  suite.run("pairing", "norm positive and equal to exp Re H (relative)", 1e-12, n, [](Rng& rng) {
    auto inst = random_pairing_instance(rng, random_curve(rng), false);
    const auto r = pairing_norm(inst.d1, inst.d2);
    if (!(r.norm > 0.0)) return 1.0;
    const double h = hermitian_form(inst.d1, inst.d2).real();
    return std::abs(r.norm - std::exp(h)) / r.norm;
  });

  suite.run("pairing", "hermitian form sesquilinear and conjugate-symmetric", 1e-12, n,
            [](Rng& rng) {
              auto inst = random_pairing_instance(rng, random_curve(rng), false);
              const auto alpha = random_gaussian_rational(rng, 3, 3);
              const cdouble a = alpha.to_complex();
              const cdouble h = hermitian_form(inst.d1, inst.d2);
              const double first =
                  std::abs(hermitian_form(divisor_scale(alpha, inst.d1), inst.d2) - a * h);
              const double second = std::abs(hermitian_form(inst.d1, divisor_scale(alpha, inst.d2)) -
                                              std::conj(a) * h);
              const double additive = std::abs(hermitian_form(inst.d1 + inst.k, inst.d2) - h -
                                                hermitian_form(inst.k, inst.d2));
              const double symmetric = std::abs(h - std::conj(hermitian_form(inst.d2, inst.d1)));
              return std::max({first, second, additive, symmetric});
            });

  suite.run("pairing", "integral divisors: product of kernel powers (relative)", 1e-12, n,
            [](Rng& rng) {
              const auto curve = random_curve(rng);
              auto ctx = MarkedCurve::create(curve);
              const auto pts = random_points(rng, curve, 6, 0.2);
              const auto d1 = random_integral_divisor(rng, ctx, {pts[0], pts[1], pts[2]});
              const auto d2 = random_integral_divisor(rng, ctx, {pts[3], pts[4], pts[5]});
              double product = 1.0;
              for (const auto& [p, m] : d1.integral_part()) {
                for (const auto& [q, k] : d2.integral_part()) {
                  product *= std::pow(std::exp(green_kernel(curve, p, q)),
                                      static_cast<double>(m * k));
                }
              }
              return std::abs(pairing_norm(d1, d2).norm - product) / product;
            });

  suite.run("pairing", "symmetry", 1e-12, n, [](Rng& rng) {
    auto inst = random_pairing_instance(rng, random_curve(rng), rng.coin());
    return check_symmetry(inst.d1, inst.d2);
  });

  suite.run("pairing", "bimultiplicativity", 1e-10, n, [](Rng& rng) {
    auto inst = random_pairing_instance(rng, random_curve(rng), rng.coin());
    return check_bimultiplicativity(inst.d1, inst.d2, inst.k);
  });

  suite.run("pairing", "scaling laws (real and complex alpha)", 1e-10, n, [](Rng& rng) {
    auto inst = random_pairing_instance(rng, random_curve(rng), false);
    const std::vector<GaussianRational> alphas{
        GaussianRational(-3), GaussianRational(Rational(1, 2)), GaussianRational(2),
        GaussianRational::i(), GaussianRational(Rational(1), Rational(1)),
        GaussianRational(Rational(2), Rational(-3))};
    double worst = 0.0;
    for (const auto& alpha : alphas) {
      const auto r = check_scaling_laws(inst.d1, inst.d2, alpha);
      worst = std::max(worst, r.conjugate_transfer);
      if (r.real_power) worst = std::max(worst, *r.real_power);
    }
    return worst;
  });
}

void strings_properties(Suite& suite, std::size_t n) {
  const std::size_t cases = std::min<std::size_t>(n, 100);
  suite.run("strings", "unitary invariance of the factor (relative)", 1e-10, cases, [](Rng& rng) {
    const auto curve = random_curve(rng);
    const std::size_t count = static_cast<std::size_t>(rng.integer(2, 4));
    const auto cfg = random_on_shell_config(rng, count);
    auto ctx = MarkedCurve::create(curve, random_points(rng, curve, count, 0.2));
    const double base = string_pairing_factor(ctx, cfg).factor;
    const auto u = random_unitary(rng);
    std::vector<Momentum> rotated;
    for (const auto& p : cfg.momenta()) rotated.push_back(apply(u, p));
    const double turned = string_pairing_factor(ctx, MomentumConfig::make(rotated)).factor;
    return std::abs(turned - base) / base;
  });

  suite.run("strings", "factorization over nu (relative)", 1e-10, cases, [](Rng& rng) {
    const auto curve = random_curve(rng);
    const std::size_t count = static_cast<std::size_t>(rng.integer(2, 4));
    const auto cfg = random_on_shell_config(rng, count);
    auto ctx = MarkedCurve::create(curve, random_points(rng, curve, count, 0.2));
    const double factor = string_pairing_factor(ctx, cfg).factor;
    double product = 1.0;
    for (std::size_t nu = 1; nu <= kSpacetimeDim; ++nu) {
      product *= offdiagonal_self_pairing(momentum_divisor(ctx, cfg, nu)).norm;
    }
    return std::abs(product - factor) / factor;
  });

  suite.run("strings", "momentum divisors have degree exactly 0", 0.0, cases, [](Rng& rng) {
    const auto curve = random_curve(rng);
    const std::size_t count = static_cast<std::size_t>(rng.integer(2, 4));
    const auto cfg = random_on_shell_config(rng, count);
    auto ctx = MarkedCurve::create(curve, random_points(rng, curve, count, 0.2));
    bool ok = true;
    for (std::size_t nu = 1; nu <= kSpacetimeDim; ++nu) {
      ok = ok && coefficient_sum(momentum_divisor(ctx, cfg, nu)).is_zero();
    }
    return mismatch(ok);
  });
}

}  // namespace

SelftestReport run_selftest(const SelftestOptions& options) {
  Suite suite(options);
  const std::size_t n = std::max<std::size_t>(options.cases, 1);
  curve_properties(suite, n);
  divisor_properties(suite, n);
  mvf_properties(suite, n);
  pairing_properties(suite, n);
  strings_properties(suite, n);
  return {suite.take()};
}

}  // namespace divpair
