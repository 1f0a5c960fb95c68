#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "divpair/curve.hpp"
#include "divpair/gaussian_rational.hpp"

namespace divpair {

/// A curve with an ordered set of distinct marked points Q_1..Q_n.
///
/// On the torus each mark is stored as its representative in the
/// fundamental cell {a + b tau : a, b in [0, 1)}. With complex coefficients
/// the Abel-Jacobi sum depends on the chosen lifts, so this cell fixes the
/// disk that contains the marks (up to isotopy) once and for all.
class MarkedCurve {
 public:
  static std::shared_ptr<const MarkedCurve> create(CurveModel curve,
                                                   std::vector<CurvePoint> marks = {});

  const CurveModel& curve() const { return curve_; }
  const std::vector<CurvePoint>& marks() const { return marks_; }
  std::size_t size() const { return marks_.size(); }
  const CurvePoint& mark(std::size_t index) const;

  std::optional<std::size_t> find_mark(const CurvePoint& p) const;

  friend bool operator==(const MarkedCurve& a, const MarkedCurve& b);

 private:
  MarkedCurve(CurveModel curve, std::vector<CurvePoint> marks)
      : curve_(curve), marks_(std::move(marks)) {}

  CurveModel curve_;
  std::vector<CurvePoint> marks_;
};

using MarkedCurvePtr = std::shared_ptr<const MarkedCurve>;

/// Where a coefficient sits: a mark index (0-based) or a free curve point.
using DivisorSite = std::variant<std::size_t, CurvePoint>;

struct DivisorTerm {
  DivisorSite site;
  GaussianRational coeff;
};

/// One nonzero term of a divisor, resolved to a curve point.
struct SupportTerm {
  CurvePoint point;
  GaussianRational coeff;
  std::optional<std::size_t> mark;
};

/// Element of Div(X, m, B): Gaussian-rational coefficients on the marks,
/// integer coefficients elsewhere, integral total degree. Zero
/// coefficients are never stored.
class ComplexDivisor {
 public:
  explicit ComplexDivisor(MarkedCurvePtr context);

  // Points that coincide with a mark are folded into the mark. Throws
  // NonIntegralOffMarks, DegreeIntegrality, IndexOutOfRange or
  // InvalidArgument (torus point at infinity).
  static ComplexDivisor make(MarkedCurvePtr context, const std::vector<DivisorTerm>& terms);

  const MarkedCurve& context() const { return *context_; }
  const MarkedCurvePtr& context_ptr() const { return context_; }
  const CurveModel& curve() const { return context_->curve(); }

  const std::map<std::size_t, GaussianRational>& marked_part() const { return marked_; }
  const std::vector<std::pair<CurvePoint, long long>>& integral_part() const {
    return integral_;
  }

  // Coefficient at mark `index`, zero when absent.
  GaussianRational mark_coefficient(std::size_t index) const;

  std::vector<SupportTerm> terms() const;
  bool empty() const { return marked_.empty() && integral_.empty(); }
  bool supported_on_marks() const { return integral_.empty(); }
  bool is_integral() const;
  bool contains(const CurvePoint& p) const;

  std::string to_string() const;

  friend bool operator==(const ComplexDivisor& a, const ComplexDivisor& b);

 private:
  static ComplexDivisor assemble(MarkedCurvePtr context,
                                 const std::vector<SupportTerm>& terms);

  MarkedCurvePtr context_;
  std::map<std::size_t, GaussianRational> marked_;
  std::vector<std::pair<CurvePoint, long long>> integral_;

  friend ComplexDivisor divisor_add(const ComplexDivisor&, const ComplexDivisor&);
  friend ComplexDivisor divisor_scale(const GaussianRational&, const ComplexDivisor&);
  friend ComplexDivisor divisor_conjugate(const ComplexDivisor&);
};

ComplexDivisor divisor_add(const ComplexDivisor& a, const ComplexDivisor& b);
ComplexDivisor divisor_negate(const ComplexDivisor& d);
ComplexDivisor divisor_scale(const GaussianRational& alpha, const ComplexDivisor& d);
ComplexDivisor divisor_conjugate(const ComplexDivisor& d);

inline ComplexDivisor operator+(const ComplexDivisor& a, const ComplexDivisor& b) {
  return divisor_add(a, b);
}
inline ComplexDivisor operator-(const ComplexDivisor& d) { return divisor_negate(d); }
inline ComplexDivisor operator-(const ComplexDivisor& a, const ComplexDivisor& b) {
  return divisor_add(a, divisor_negate(b));
}

// Exact sum of all coefficients (always an integer for a valid divisor).
GaussianRational coefficient_sum(const ComplexDivisor& d);
long long degree(const ComplexDivisor& d);

/// Invariant of the divisor class: the degree, plus on the torus the
/// Abel-Jacobi sum reduced to the fundamental cell.
struct ClassDescriptor {
  long long degree = 0;
  std::optional<cdouble> jacobian;
  CurveModel curve = CurveModel::sphere();

  // Torus components are compared modulo the lattice within kTorusPointTol.
  bool equivalent(const ClassDescriptor& other) const;
  ClassDescriptor combine(const ClassDescriptor& other) const;
};

ClassDescriptor class_invariant(const ComplexDivisor& d);

}  // namespace divpair
