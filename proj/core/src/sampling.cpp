#include "divpair/sampling.hpp"

#include <cmath>
#include <numbers>

#include "divpair/errors.hpp"

namespace divpair {

std::uint64_t Rng::next() {
  std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

double Rng::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

long long Rng::integer(long long lo, long long hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<long long>(next() % span);
}

double Rng::normal() {
  // Box-Muller; u1 in (0, 1].
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

cdouble random_tau(Rng& rng) { return {rng.uniform(-0.5, 0.5), rng.uniform(0.5, 2.0)}; }

CurveModel random_curve(Rng& rng) {
  return rng.coin() ? CurveModel::sphere() : CurveModel::torus(random_tau(rng));
}

std::vector<CurvePoint> random_points(Rng& rng, const CurveModel& curve, std::size_t count,
                                      double min_separation) {
  std::vector<CurvePoint> points;
  int attempts = 0;
  while (points.size() < count) {
    if (++attempts > 100000) fail(ErrorKind::InvalidArgument, "cannot place separated points");
    CurvePoint p;
    if (curve.is_torus()) {
      p = CurvePoint::affine(rng.uniform() + rng.uniform() * curve.tau());
    } else {
      p = CurvePoint::affine({rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5)});
    }
    bool ok = true;
    for (const auto& q : points) ok = ok && curve.separation(p, q) >= min_separation;
    if (ok) points.push_back(p);
  }
  return points;
}

GaussianRational random_gaussian_rational(Rng& rng, long long max_numerator,
                                          long long max_denominator) {
  const Rational re(rng.integer(-max_numerator, max_numerator), rng.integer(1, max_denominator));
  const Rational im(rng.integer(-max_numerator, max_numerator), rng.integer(1, max_denominator));
  return {re, im};
}

ComplexDivisor random_marked_divisor(Rng& rng, const MarkedCurvePtr& context,
                                     const std::vector<std::size_t>& marks) {
  std::vector<DivisorTerm> terms;
  GaussianRational running;
  for (std::size_t i = 0; i + 1 < marks.size(); ++i) {
    GaussianRational c = random_gaussian_rational(rng, 4, 4);
    // keep |re|, |im| <= 1
    if (abs(c.re()) > 1) c = {c.re() / 4, c.im()};
    if (abs(c.im()) > 1) c = {c.re(), c.im() / 4};
    running += c;
    terms.push_back({marks[i], c});
  }
  if (!marks.empty()) terms.push_back({marks.back(), -running});
  return ComplexDivisor::make(context, terms);
}

ComplexDivisor random_integral_divisor(Rng& rng, const MarkedCurvePtr& context,
                                       const std::vector<CurvePoint>& points) {
  std::vector<DivisorTerm> terms;
  long long running = 0;
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    long long c = rng.integer(-2, 2);
    if (c == 0) c = 1;
    running += c;
    terms.push_back({points[i], GaussianRational(c)});
  }
  if (!points.empty()) terms.push_back({points.back(), GaussianRational(-running)});
  return ComplexDivisor::make(context, terms);
}

PairingInstance random_pairing_instance(Rng& rng, const CurveModel& curve,
                                        bool with_integral_points) {
  const double separation = curve.is_torus() ? 0.12 : 0.25;
  const std::size_t n1 = static_cast<std::size_t>(rng.integer(2, 3));
  const std::size_t n2 = static_cast<std::size_t>(rng.integer(2, 3));
  const std::size_t nk = 2;
  const std::size_t free_count = with_integral_points ? 4 : 0;
  auto points = random_points(rng, curve, n1 + n2 + nk + free_count, separation);

  std::vector<CurvePoint> marks(points.begin(), points.begin() + n1 + n2 + nk);
  auto context = MarkedCurve::create(curve, marks);

  std::vector<std::size_t> g1, g2, gk;
  for (std::size_t i = 0; i < n1; ++i) g1.push_back(i);
  for (std::size_t i = n1; i < n1 + n2; ++i) g2.push_back(i);
  for (std::size_t i = n1 + n2; i < n1 + n2 + nk; ++i) gk.push_back(i);

  ComplexDivisor d1 = random_marked_divisor(rng, context, g1);
  ComplexDivisor d2 = random_marked_divisor(rng, context, g2);
  if (with_integral_points) {
    const auto base = points.begin() + static_cast<std::ptrdiff_t>(n1 + n2 + nk);
    d1 = d1 + random_integral_divisor(rng, context, {base[0], base[1]});
    d2 = d2 + random_integral_divisor(rng, context, {base[2], base[3]});
  }
  ComplexDivisor k = random_marked_divisor(rng, context, gk);
  return {context, d1, d2, k};
}

std::pair<RationalFunction, RationalFunction> random_function_pair(Rng& rng,
                                                                   const CurveModel& curve) {
  const double separation = curve.is_torus() ? 0.1 : 0.2;
  if (curve.is_torus()) {
    // f: zeros a1, a2, poles b1, a1 + a2 - b1 (exact zero moment), same for g.
    auto pts = random_points(rng, curve, 6, separation);
    auto build = [&](cdouble a1, cdouble a2, cdouble b1) {
      const cdouble b2 = a1 + a2 - b1;
      return std::vector<std::pair<CurvePoint, long long>>{
          {CurvePoint::affine(a1), 1}, {CurvePoint::affine(a2), 1},
          {CurvePoint::affine(b1), -1}, {CurvePoint::affine(b2), -1}};
    };
    for (int attempt = 0; attempt < 1000; ++attempt) {
      auto f_zp = build(pts[0].z, pts[1].z, pts[2].z);
      auto g_zp = build(pts[3].z, pts[4].z, pts[5].z);
      bool ok = true;
      for (const auto& [p, m] : f_zp) {
        for (const auto& [q, n] : g_zp) ok = ok && curve.separation(p, q) >= separation;
      }
      for (std::size_t i = 0; i < f_zp.size(); ++i) {
        for (std::size_t j = i + 1; j < f_zp.size(); ++j) {
          ok = ok && curve.separation(f_zp[i].first, f_zp[j].first) >= separation &&
               curve.separation(g_zp[i].first, g_zp[j].first) >= separation;
        }
      }
      if (ok) {
        const cdouble cf{rng.uniform(0.5, 2.0), rng.uniform(-1.0, 1.0)};
        const cdouble cg{rng.uniform(0.5, 2.0), rng.uniform(-1.0, 1.0)};
        return {RationalFunction::make(curve, f_zp, cf), RationalFunction::make(curve, g_zp, cg)};
      }
      pts = random_points(rng, curve, 6, separation);
    }
    fail(ErrorKind::InvalidArgument, "could not sample disjoint elliptic functions");
  }

  // Sphere: one of the two functions has affine degree zero so that at most
  // one divisor reaches infinity.
  const std::size_t nf = static_cast<std::size_t>(rng.integer(1, 4));
  const std::size_t ng = static_cast<std::size_t>(rng.integer(1, 4));
  auto pts = random_points(rng, curve, nf + ng, separation);
  auto multiplicities = [&](std::size_t count, bool balanced) {
    std::vector<long long> m(count);
    long long running = 0;
    for (std::size_t i = 0; i < count; ++i) {
      m[i] = rng.integer(-3, 3);
      if (m[i] == 0) m[i] = 1;
      running += m[i];
    }
    if (balanced) {
      if (count == 1) {
        m[0] = 0;
      } else {
        m[count - 1] -= running;
      }
    }
    return m;
  };
  const bool f_balanced = rng.coin();
  const auto mf = multiplicities(nf, f_balanced);
  const auto mg = multiplicities(ng, !f_balanced);
  std::vector<std::pair<CurvePoint, long long>> f_zp, g_zp;
  for (std::size_t i = 0; i < nf; ++i) f_zp.emplace_back(pts[i], mf[i]);
  for (std::size_t i = 0; i < ng; ++i) g_zp.emplace_back(pts[nf + i], mg[i]);
  const cdouble cf{rng.uniform(0.5, 2.0), rng.uniform(-1.0, 1.0)};
  const cdouble cg{rng.uniform(0.5, 2.0), rng.uniform(-1.0, 1.0)};
  return {RationalFunction::make(curve, f_zp, cf), RationalFunction::make(curve, g_zp, cg)};
}

ClassPair random_class_pair(Rng& rng, const CurveModel& torus, bool equivalent) {
  if (!torus.is_torus()) fail(ErrorKind::InvalidArgument, "class pairs are sampled on a torus");
  constexpr double separation = 0.08;
  for (int attempt = 0; attempt < 1000; ++attempt) {
    auto pts = random_points(rng, torus, 7, separation);
    auto context = MarkedCurve::create(torus, {pts[0], pts[1], pts[2]});
    const ComplexDivisor d1 = random_marked_divisor(rng, context, {0, 1, 2});

    GaussianRational c = random_gaussian_rational(rng, 3, 4);
    if (c.is_zero()) c = GaussianRational::i();
    const cdouble shift = c.to_complex() * (context->mark(0).z - context->mark(1).z);
    cdouble offset{};
    if (!equivalent) {
      // keep the offset well away from the lattice
      do {
        offset = {rng.uniform(0.1, 0.9), 0.0};
        offset += rng.uniform(0.1, 0.9) * torus.tau();
      } while (torus.lattice_distance(offset) < 0.05);
    }
    const CurvePoint r = pts[3];
    const CurvePoint p = torus.canonical(CurvePoint::affine(r.z - shift + offset));

    // zeros a1, a2; poles b1, a1 + a2 - b1
    const cdouble a1 = pts[4].z, a2 = pts[5].z, b1 = pts[6].z;
    const CurvePoint b2 = torus.canonical(CurvePoint::affine(a1 + a2 - b1));

    std::vector<CurvePoint> fresh{p, b2};
    bool ok = true;
    for (const auto& q : fresh) {
      for (const auto& other : pts) ok = ok && torus.separation(q, other) >= separation;
    }
    ok = ok && torus.separation(p, b2) >= separation;
    if (!ok) continue;

    const ComplexDivisor delta = ComplexDivisor::make(
        context, {{std::size_t{0}, c}, {std::size_t{1}, -c}, {p, 1}, {r, -1}, {pts[4], 1},
                  {pts[5], 1}, {pts[6], -1}, {b2, -1}});
    return {context, d1, d1 + delta, equivalent};
  }
  fail(ErrorKind::InvalidArgument, "could not sample a separated class pair");
}

Unitary random_unitary(Rng& rng) {
  // Gram-Schmidt on a complex Gaussian matrix (rows are the basis vectors).
  Unitary u{};
  for (std::size_t r = 0; r < kSpacetimeDim; ++r) {
    for (auto& x : u[r]) x = {rng.normal(), rng.normal()};
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t s = 0; s < r; ++s) {
        cdouble dot{};
        for (std::size_t c = 0; c < kSpacetimeDim; ++c) dot += u[r][c] * std::conj(u[s][c]);
        for (std::size_t c = 0; c < kSpacetimeDim; ++c) u[r][c] -= dot * u[s][c];
      }
    }
    double norm = 0.0;
    for (const auto& x : u[r]) norm += std::norm(x);
    norm = std::sqrt(norm);
    for (auto& x : u[r]) x /= norm;
  }
  return u;
}

Momentum apply(const Unitary& u, const Momentum& p) {
  Momentum out{};
  for (std::size_t r = 0; r < kSpacetimeDim; ++r) {
    for (std::size_t c = 0; c < kSpacetimeDim; ++c) out[r] += u[r][c] * p[c];
  }
  return out;
}

MomentumConfig random_on_shell_config(Rng& rng, std::size_t n) {
  Momentum e1{}, e2{};
  e1[0] = 1.0;
  e2[1] = 1.0;
  std::vector<Momentum> base;
  switch (n) {
    case 2:
      base = {e1, e1};
      for (auto& x : base[1]) x = -x;
      break;
    case 3: {
      const double s = std::sqrt(3.0) / 2.0;
      Momentum p2{}, p3{};
      p2[0] = -0.5;
      p2[1] = s;
      p3[0] = -0.5;
      p3[1] = -s;
      base = {e1, p2, p3};
      break;
    }
    case 4: {
      Momentum m1{}, m2{};
      m1[0] = -1.0;
      m2[1] = -1.0;
      base = {e1, m1, e2, m2};
      break;
    }
    default:
      fail(ErrorKind::InvalidArgument, "on-shell sampler supports n = 2, 3, 4");
  }
  const Unitary u = random_unitary(rng);
  std::vector<Momentum> rotated;
  for (const auto& p : base) rotated.push_back(apply(u, p));
  // Rotation rounding can leave ~1e-16 drift; balance the last momentum.
  Momentum total{};
  for (std::size_t i = 0; i + 1 < rotated.size(); ++i) {
    for (std::size_t nu = 0; nu < kSpacetimeDim; ++nu) total[nu] += rotated[i][nu];
  }
  for (std::size_t nu = 0; nu < kSpacetimeDim; ++nu) rotated.back()[nu] = -total[nu];
  return MomentumConfig::make(std::move(rotated));
}

}  // namespace divpair
