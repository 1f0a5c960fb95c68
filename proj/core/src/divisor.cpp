#include "divpair/divisor.hpp"

#include <algorithm>
#include <cstdio>

#include "divpair/errors.hpp"

namespace divpair {

namespace {

bool point_less(const CurvePoint& a, const CurvePoint& b) {
  if (a.at_infinity != b.at_infinity) return b.at_infinity;
  if (a.z.real() != b.z.real()) return a.z.real() < b.z.real();
  return a.z.imag() < b.z.imag();
}

std::string format_point(const CurvePoint& p) {
  if (p.at_infinity) return "inf";
  char buf[96];
  const double re = p.z.real();
  const double im = p.z.imag();
  if (im == 0.0) {
    std::snprintf(buf, sizeof buf, "%.17g", re);
  } else if (re == 0.0) {
    std::snprintf(buf, sizeof buf, "%.17gi", im);
  } else {
    std::snprintf(buf, sizeof buf, "%.17g%+.17gi", re, im);
  }
  return buf;
}

}  // namespace

std::shared_ptr<const MarkedCurve> MarkedCurve::create(CurveModel curve,
                                                       std::vector<CurvePoint> marks) {
  for (auto& m : marks) {
    if (m.at_infinity) {
      fail(ErrorKind::InvalidArgument, "marks must be affine points");
    }
    m = curve.canonical(m);
  }
  for (std::size_t i = 0; i < marks.size(); ++i) {
    for (std::size_t j = i + 1; j < marks.size(); ++j) {
      if (curve.same_point(marks[i], marks[j])) {
        fail(ErrorKind::InvalidArgument,
             "marks Q" + std::to_string(i + 1) + " and Q" + std::to_string(j + 1) +
                 " coincide");
      }
    }
  }
  return std::shared_ptr<const MarkedCurve>(new MarkedCurve(curve, std::move(marks)));
}

const CurvePoint& MarkedCurve::mark(std::size_t index) const {
  if (index >= marks_.size()) {
    fail(ErrorKind::IndexOutOfRange, "mark Q" + std::to_string(index + 1) + " of " +
                                         std::to_string(marks_.size()));
  }
  return marks_[index];
}

std::optional<std::size_t> MarkedCurve::find_mark(const CurvePoint& p) const {
  for (std::size_t i = 0; i < marks_.size(); ++i) {
    if (curve_.same_point(marks_[i], p)) return i;
  }
  return std::nullopt;
}

bool operator==(const MarkedCurve& a, const MarkedCurve& b) {
  if (&a == &b) return true;
  if (!(a.curve_ == b.curve_) || a.marks_.size() != b.marks_.size()) return false;
  for (std::size_t i = 0; i < a.marks_.size(); ++i) {
    if (!a.curve_.same_point(a.marks_[i], b.marks_[i])) return false;
  }
  return true;
}

ComplexDivisor::ComplexDivisor(MarkedCurvePtr context) : context_(std::move(context)) {
  if (!context_) fail(ErrorKind::InvalidArgument, "divisor requires a marked curve");
}

ComplexDivisor ComplexDivisor::make(MarkedCurvePtr context,
                                    const std::vector<DivisorTerm>& terms) {
  std::vector<SupportTerm> resolved;
  resolved.reserve(terms.size());
  for (const auto& term : terms) {
    if (const auto* index = std::get_if<std::size_t>(&term.site)) {
      resolved.push_back({context->mark(*index), term.coeff, *index});
    } else {
      resolved.push_back({std::get<CurvePoint>(term.site), term.coeff, std::nullopt});
    }
  }
  return assemble(std::move(context), resolved);
}

ComplexDivisor ComplexDivisor::assemble(MarkedCurvePtr context,
                                        const std::vector<SupportTerm>& terms) {
  ComplexDivisor out(std::move(context));
  const CurveModel& curve = out.context_->curve();
  std::vector<std::pair<CurvePoint, GaussianRational>> free_points;

  for (const auto& term : terms) {
    std::optional<std::size_t> mark = term.mark;
    if (!mark) {
      if (term.point.at_infinity && curve.is_torus()) {
        fail(ErrorKind::InvalidArgument, "the torus has no point at infinity");
      }
      mark = out.context_->find_mark(term.point);
    }
    if (mark) {
      out.marked_[*mark] += term.coeff;
      continue;
    }
    const CurvePoint p = curve.canonical(term.point);
    auto it = std::find_if(free_points.begin(), free_points.end(),
                           [&](const auto& e) { return curve.same_point(e.first, p); });
    if (it == free_points.end()) {
      free_points.emplace_back(p, term.coeff);
    } else {
      it->second += term.coeff;
    }
  }

  std::erase_if(out.marked_, [](const auto& kv) { return kv.second.is_zero(); });
  for (const auto& [point, coeff] : free_points) {
    if (coeff.is_zero()) continue;
    const auto value = coeff.as_integer();
    if (!value) {
      fail(ErrorKind::NonIntegralOffMarks,
           coeff.to_string() + " at " + format_point(point));
    }
    out.integral_.emplace_back(point, *value);
  }
  std::sort(out.integral_.begin(), out.integral_.end(),
            [](const auto& a, const auto& b) { return point_less(a.first, b.first); });

  const GaussianRational total = coefficient_sum(out);
  if (!total.is_integer()) {
    fail(ErrorKind::DegreeIntegrality, "degree would be " + total.to_string());
  }
  return out;
}

GaussianRational ComplexDivisor::mark_coefficient(std::size_t index) const {
  context_->mark(index);
  const auto it = marked_.find(index);
  return it == marked_.end() ? GaussianRational{} : it->second;
}

std::vector<SupportTerm> ComplexDivisor::terms() const {
  std::vector<SupportTerm> out;
  out.reserve(marked_.size() + integral_.size());
  for (const auto& [index, coeff] : marked_) {
    out.push_back({context_->mark(index), coeff, index});
  }
  for (const auto& [point, coeff] : integral_) {
    out.push_back({point, GaussianRational(coeff), std::nullopt});
  }
  return out;
}

bool ComplexDivisor::is_integral() const {
  return std::all_of(marked_.begin(), marked_.end(),
                     [](const auto& kv) { return kv.second.is_integer(); });
}

bool ComplexDivisor::contains(const CurvePoint& p) const {
  const CurveModel& c = curve();
  for (const auto& [index, coeff] : marked_) {
    if (c.same_point(context_->mark(index), p)) return true;
  }
  for (const auto& [point, coeff] : integral_) {
    if (c.same_point(point, p)) return true;
  }
  return false;
}

std::string ComplexDivisor::to_string() const {
  std::string out;
  auto append = [&out](const std::string& term) {
    if (!out.empty()) out += ",";
    out += term;
  };
  for (const auto& [index, coeff] : marked_) {
    append(coeff.to_string() + "@Q" + std::to_string(index + 1));
  }
  for (const auto& [point, coeff] : integral_) {
    append(std::to_string(coeff) + "@" + format_point(point));
  }
  return out;
}

bool operator==(const ComplexDivisor& a, const ComplexDivisor& b) {
  if (!(*a.context_ == *b.context_)) return false;
  if (a.marked_ != b.marked_ || a.integral_.size() != b.integral_.size()) return false;
  const CurveModel& curve = a.curve();
  for (const auto& [point, coeff] : a.integral_) {
    const auto it = std::find_if(b.integral_.begin(), b.integral_.end(), [&](const auto& e) {
      return curve.same_point(e.first, point);
    });
    if (it == b.integral_.end() || it->second != coeff) return false;
  }
  return true;
}

ComplexDivisor divisor_add(const ComplexDivisor& a, const ComplexDivisor& b) {
  if (!(a.context() == b.context())) fail(ErrorKind::MismatchedContext);
  std::vector<SupportTerm> terms = a.terms();
  for (auto& t : b.terms()) terms.push_back(std::move(t));
  return ComplexDivisor::assemble(a.context_ptr(), terms);
}

ComplexDivisor divisor_negate(const ComplexDivisor& d) {
  return divisor_scale(GaussianRational(-1), d);
}

ComplexDivisor divisor_scale(const GaussianRational& alpha, const ComplexDivisor& d) {
  if (!alpha.is_integer() && !d.supported_on_marks()) {
    fail(ErrorKind::NonIntegralOffMarks,
         "cannot scale integral points by " + alpha.to_string());
  }
  std::vector<SupportTerm> terms = d.terms();
  for (auto& t : terms) t.coeff *= alpha;
  return ComplexDivisor::assemble(d.context_ptr(), terms);
}

ComplexDivisor divisor_conjugate(const ComplexDivisor& d) {
  std::vector<SupportTerm> terms = d.terms();
  for (auto& t : terms) t.coeff = t.coeff.conj();
  return ComplexDivisor::assemble(d.context_ptr(), terms);
}

GaussianRational coefficient_sum(const ComplexDivisor& d) {
  GaussianRational total;
  for (const auto& [index, coeff] : d.marked_part()) total += coeff;
  for (const auto& [point, coeff] : d.integral_part()) total += GaussianRational(coeff);
  return total;
}

long long degree(const ComplexDivisor& d) {
  const auto value = coefficient_sum(d).as_integer();
  if (!value) fail(ErrorKind::DegreeIntegrality, "degree out of range");
  return *value;
}

bool ClassDescriptor::equivalent(const ClassDescriptor& other) const {
  if (degree != other.degree || jacobian.has_value() != other.jacobian.has_value()) {
    return false;
  }
  if (!jacobian) return true;
  return curve.lattice_distance(*jacobian - *other.jacobian) <= kTorusPointTol;
}

ClassDescriptor ClassDescriptor::combine(const ClassDescriptor& other) const {
  ClassDescriptor out{degree + other.degree, std::nullopt, curve};
  if (jacobian && other.jacobian) out.jacobian = curve.reduce(*jacobian + *other.jacobian);
  return out;
}

ClassDescriptor class_invariant(const ComplexDivisor& d) {
  ClassDescriptor out{degree(d), std::nullopt, d.curve()};
  if (d.curve().is_torus()) out.jacobian = abel_jacobi_sum(d).reduced;
  return out;
}

}  // namespace divpair
