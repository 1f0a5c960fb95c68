#include "divpair/pairing.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "divpair/errors.hpp"

namespace divpair {

namespace {

constexpr cdouble kTwoPiI{0.0, 2.0 * std::numbers::pi};

void require_same_context(const ComplexDivisor& a, const ComplexDivisor& b) {
  if (!(a.context() == b.context())) fail(ErrorKind::MismatchedContext);
}

void require_degree_zero(const ComplexDivisor& d, const char* which) {
  const long long deg = degree(d);
  if (deg != 0) {
    fail(ErrorKind::DegreeMustBeZero, std::string(which) + " has degree " + std::to_string(deg));
  }
}

void require_disjoint(const CurveModel& curve, const std::vector<SupportTerm>& a,
                      const std::vector<SupportTerm>& b) {
  for (const auto& p : a) {
    for (const auto& q : b) {
      if (curve.separation(p.point, q.point) <= kDisjointTol) fail(ErrorKind::NotDisjoint);
    }
  }
}

}  // namespace

RationalFunction RationalFunction::make(const CurveModel& curve,
                                        std::vector<std::pair<CurvePoint, long long>> zeros_poles,
                                        cdouble leading_constant) {
  if (leading_constant == cdouble{}) {
    fail(ErrorKind::InvalidArgument, "leading constant must be nonzero");
  }
  RationalFunction f(curve);
  f.leading_ = leading_constant;
  for (const auto& [point, mult] : zeros_poles) {
    if (point.at_infinity) {
      fail(ErrorKind::InvalidArgument,
           curve.is_torus() ? "the torus has no point at infinity"
                            : "infinity is implied by the affine zeros and poles");
    }
    if (mult == 0) continue;
    auto it = std::find_if(f.zeros_poles_.begin(), f.zeros_poles_.end(),
                           [&](const auto& e) { return curve.same_point(e.first, point); });
    if (it == f.zeros_poles_.end()) {
      f.zeros_poles_.emplace_back(point, mult);
    } else {
      it->second += mult;
    }
  }
  std::erase_if(f.zeros_poles_, [](const auto& e) { return e.second == 0; });

  if (curve.is_torus()) {
    cdouble moment{};
    for (const auto& [point, mult] : f.zeros_poles_) moment += static_cast<double>(mult) * point.z;
    if (f.affine_degree() != 0) {
      fail(ErrorKind::InvalidArgument, "elliptic function needs as many zeros as poles");
    }
    if (curve.lattice_distance(moment) > kTorusPointTol) {
      fail(ErrorKind::InvalidArgument, "sum of zeros minus poles is not a lattice point");
    }
    f.lattice_b_ = std::llround(curve.lattice_coords(moment).second);
  }
  return f;
}

long long RationalFunction::affine_degree() const {
  long long total = 0;
  for (const auto& [point, mult] : zeros_poles_) total += mult;
  return total;
}

ComplexDivisor RationalFunction::divisor() const {
  std::vector<DivisorTerm> terms;
  for (const auto& [point, mult] : zeros_poles_) terms.push_back({point, GaussianRational(mult)});
  const long long at_infinity = -affine_degree();
  if (!curve_.is_torus() && at_infinity != 0) {
    terms.push_back({CurvePoint::infinity(), GaussianRational(at_infinity)});
  }
  return ComplexDivisor::make(MarkedCurve::create(curve_), terms);
}

cdouble RationalFunction::log_value(const CurvePoint& p) const {
  cdouble total = std::log(leading_);
  if (p.at_infinity) {
    if (curve_.is_torus()) fail(ErrorKind::InvalidArgument, "the torus has no point at infinity");
    if (affine_degree() != 0) fail(ErrorKind::NotDisjoint, "f has a zero or pole at infinity");
    return total;
  }
  for (const auto& [point, mult] : zeros_poles_) {
    if (curve_.separation(p, point) <= kDisjointTol) {
      fail(ErrorKind::NotDisjoint, "f has a zero or pole there");
    }
    const double m = static_cast<double>(mult);
    if (curve_.is_torus()) {
      total += m * log_theta1(p.z - point.z, curve_.tau());
    } else {
      total += m * std::log(p.z - point.z);
    }
  }
  if (curve_.is_torus()) total -= kTwoPiI * static_cast<double>(lattice_b_) * p.z;
  return total;
}

RationalFunction operator*(const RationalFunction& f, const RationalFunction& g) {
  if (!(f.curve_ == g.curve_)) fail(ErrorKind::MismatchedContext);
  auto zeros_poles = f.zeros_poles_;
  zeros_poles.insert(zeros_poles.end(), g.zeros_poles_.begin(), g.zeros_poles_.end());
  return RationalFunction::make(f.curve_, std::move(zeros_poles), f.leading_ * g.leading_);
}

cdouble weil_symbol(const RationalFunction& f, const ComplexDivisor& d) {
  if (!(f.curve() == d.curve())) fail(ErrorKind::MismatchedContext);
  if (!d.is_integral()) fail(ErrorKind::InvalidArgument, "Weil symbol needs an integral divisor");
  cdouble log_total{};
  for (const auto& term : d.terms()) {
    const double n = term.coeff.re().convert_to<double>();
    log_total += n * f.log_value(term.point);
  }
  const cdouble value = std::exp(log_total);
  if (value == cdouble{} || !std::isfinite(std::abs(value))) {
    fail(ErrorKind::NotDisjoint, "symbol is 0 or infinite");
  }
  return value;
}

ReciprocityCheck check_weil_reciprocity(const RationalFunction& f, const RationalFunction& g) {
  const ComplexDivisor div_f = f.divisor();
  const ComplexDivisor div_g = g.divisor();
  require_disjoint(f.curve(), div_f.terms(), div_g.terms());
  const cdouble lhs = weil_symbol(f, div_g);
  const cdouble rhs = weil_symbol(g, div_f);
  return {lhs, rhs, std::abs(lhs / rhs - 1.0)};
}

std::string_view formula_name(PairingFormula formula) {
  switch (formula) {
    case PairingFormula::Ad: return "ad";
    case PairingFormula::AdSym: return "adsym";
    case PairingFormula::Ad3: return "ad3";
  }
  return "ad3";
}

std::optional<PairingFormula> parse_formula(std::string_view name) {
  if (name == "ad") return PairingFormula::Ad;
  if (name == "adsym") return PairingFormula::AdSym;
  if (name == "ad3") return PairingFormula::Ad3;
  return std::nullopt;
}

double PairingEvaluation::exponent(PairingFormula formula) const {
  switch (formula) {
    case PairingFormula::Ad: return ad;
    case PairingFormula::AdSym: return adsym;
    case PairingFormula::Ad3: return ad3;
  }
  return ad3;
}

double PairingEvaluation::max_discrepancy() const {
  return std::max({std::abs(ad - adsym), std::abs(ad - ad3), std::abs(adsym - ad3)});
}

PairingEvaluation evaluate_pairing(const ComplexDivisor& d1, const ComplexDivisor& d2,
                                   const KernelOptions& opts) {
  require_same_context(d1, d2);
  require_degree_zero(d1, "first divisor");
  require_degree_zero(d2, "second divisor");
  const auto t1 = d1.terms();
  const auto t2 = d2.terms();
  const CurveModel& curve = d1.curve();
  require_disjoint(curve, t1, t2);

  PairingEvaluation out;

  // ad: sqrt(prod_i G_{div l2}(P_i)^{conj n_i} G_{conj div l2}(P_i)^{n_i})
  const ComplexDivisor d2_bar = divisor_conjugate(d2);
  cdouble ad{};
  for (const auto& p : t1) {
    const cdouble n = p.coeff.to_complex();
    ad += std::conj(n) * green_divisor(d2, p.point, opts) +
          n * green_divisor(d2_bar, p.point, opts);
  }
  ad *= 0.5;

  // adsym: sqrt(prod_i G_{div l2}(P_i)^{conj n_i} prod_j G_{div l1}(P'_j)^{conj n'_j})
  cdouble adsym{};
  for (const auto& p : t1) {
    adsym += std::conj(p.coeff.to_complex()) * green_divisor(d2, p.point, opts);
  }
  for (const auto& q : t2) {
    adsym += std::conj(q.coeff.to_complex()) * green_divisor(d1, q.point, opts);
  }
  adsym *= 0.5;

  // ad3: prod_{i,j} G_{P_i}(P'_j)^{Re(n_i conj n'_j)}
  double ad3 = 0.0;
  cdouble hermitian{};
  for (const auto& p : t1) {
    const cdouble n = p.coeff.to_complex();
    for (const auto& q : t2) {
      const cdouble weight = n * std::conj(q.coeff.to_complex());
      const double g = green_kernel(curve, p.point, q.point, opts);
      ad3 += weight.real() * g;
      hermitian += weight * g;
    }
  }

  out.ad = ad.real();
  out.ad_imag = ad.imag();
  out.adsym = adsym.real();
  out.adsym_imag = adsym.imag();
  out.ad3 = ad3;
  out.hermitian_value = hermitian;
  return out;
}

PairingResult pairing_norm(const ComplexDivisor& d1, const ComplexDivisor& d2,
                           PairingFormula formula, const KernelOptions& opts) {
  const PairingEvaluation eval = evaluate_pairing(d1, d2, opts);
  const double exponent = eval.exponent(formula);
  return {std::exp(exponent), exponent, eval.hermitian_value, formula};
}

cdouble hermitian_form(const ComplexDivisor& d1, const ComplexDivisor& d2,
                       const KernelOptions& opts) {
  if (!d1.supported_on_marks() || !d2.supported_on_marks()) {
    fail(ErrorKind::SupportOutsideMarks);
  }
  return evaluate_pairing(d1, d2, opts).hermitian_value;
}

ScalingResiduals check_scaling_laws(const ComplexDivisor& d1, const ComplexDivisor& d2,
                                    const GaussianRational& alpha) {
  const ComplexDivisor scaled = divisor_scale(alpha, d1);
  const double scaled_norm = pairing_norm(scaled, d2).norm;

  ScalingResiduals out;
  if (alpha.is_real()) {
    const double base = pairing_norm(d1, d2).norm;
    out.real_power = std::abs(scaled_norm - std::pow(base, alpha.re().convert_to<double>()));
  }
  const double transferred = pairing_norm(d1, divisor_scale(alpha.conj(), d2)).norm;
  out.conjugate_transfer = std::abs(scaled_norm - transferred);
  return out;
}

double check_bimultiplicativity(const ComplexDivisor& d1, const ComplexDivisor& d2,
                                const ComplexDivisor& k) {
  const double joint = pairing_norm(d1 + d2, k).norm;
  const double split = pairing_norm(d1, k).norm * pairing_norm(d2, k).norm;
  return std::abs(joint - split) / joint;
}

double check_symmetry(const ComplexDivisor& d1, const ComplexDivisor& d2) {
  const double forward = pairing_norm(d1, d2).norm;
  const double backward = pairing_norm(d2, d1).norm;
  return std::abs(forward - backward) / forward;
}

PairingResult offdiagonal_self_pairing(const ComplexDivisor& d, const KernelOptions& opts) {
  require_degree_zero(d, "divisor");
  const auto terms = d.terms();
  const CurveModel& curve = d.curve();
  double exponent = 0.0;
  cdouble hermitian{};
  for (std::size_t i = 0; i < terms.size(); ++i) {
    for (std::size_t j = 0; j < terms.size(); ++j) {
      if (i == j) continue;
      const cdouble weight = terms[i].coeff.to_complex() * std::conj(terms[j].coeff.to_complex());
      const double g = green_kernel(curve, terms[i].point, terms[j].point, opts);
      exponent += weight.real() * g;
      hermitian += weight * g;
    }
  }
  return {std::exp(exponent), exponent, hermitian, PairingFormula::Ad3};
}

}  // namespace divpair
