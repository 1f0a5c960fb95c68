#pragma once

#include <string_view>
#include <vector>

#include "divpair/divisor.hpp"

namespace divpair {

// Complex literals: "a", "ai", "a+bi", "a-bi", "i", "-i" where a and b are
// decimals (optionally with exponent) or rationals "p/q". Whitespace is
// ignored. All parse functions throw Error(Parse).

GaussianRational parse_gaussian_rational(std::string_view text);
cdouble parse_complex(std::string_view text);

// A complex literal, or "inf" for the sphere's point at infinity.
CurvePoint parse_point(std::string_view text);

// divisor := term ("," term)* ; term := coeff "@" point ; point may be
// "Qk" (1-based mark reference). The empty string is the zero divisor.
struct ParsedTerm {
  GaussianRational coeff;
  DivisorSite site;
};

std::vector<ParsedTerm> parse_divisor_terms(std::string_view text);

// Parses and builds against a marked curve; mark references are checked
// against it. Domain violations (degree, integrality) throw their own kinds.
ComplexDivisor parse_divisor(std::string_view text, const MarkedCurvePtr& context);

// Comma-separated list of complex literals (used for --marks).
std::vector<CurvePoint> parse_point_list(std::string_view text);

}  // namespace divpair
