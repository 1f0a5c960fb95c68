#include "divpair/literal.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <optional>
#include <string>

#include "divpair/errors.hpp"

namespace divpair {

namespace {

std::string strip_spaces(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
  }
  return out;
}

[[noreturn]] void parse_fail(std::string_view text, const std::string& why) {
  fail(ErrorKind::Parse, why + " in '" + std::string(text) + "'");
}

bool is_decimal(std::string_view s) {
  std::size_t i = 0;
  std::size_t digits = 0;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i, ++digits;
  if (i < s.size() && s[i] == '.') {
    ++i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i, ++digits;
  }
  if (digits == 0) return false;
  if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
    ++i;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
    std::size_t exp_digits = 0;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i, ++exp_digits;
    if (exp_digits == 0) return false;
  }
  return i == s.size();
}

Rational exact_decimal(std::string_view s) {
  BigInt mantissa = 0;
  long long scale = 0;
  std::size_t i = 0;
  bool after_point = false;
  for (; i < s.size(); ++i) {
    const char c = s[i];
    if (c == '.') {
      after_point = true;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      mantissa = mantissa * 10 + (c - '0');
      if (after_point) --scale;
    } else {
      break;
    }
  }
  if (i < s.size()) scale += std::stoll(std::string(s.substr(i + 1)));
  Rational value(mantissa);
  BigInt power = 1;
  for (long long k = 0; k < (scale < 0 ? -scale : scale); ++k) power *= 10;
  return scale < 0 ? value / Rational(power) : value * Rational(power);
}

// One signed component of a complex literal.
struct Component {
  bool negative = false;
  std::string number;  // empty means an implicit 1 (as in "i" or "-i")
  bool imaginary = false;
};

std::vector<Component> split_components(std::string_view original, const std::string& s) {
  if (s.empty()) parse_fail(original, "empty number");
  std::vector<Component> parts;
  std::size_t i = 0;
  while (i < s.size()) {
    Component c;
    if (s[i] == '+' || s[i] == '-') {
      c.negative = s[i] == '-';
      ++i;
    } else if (!parts.empty()) {
      parse_fail(original, "expected sign between components");
    }
    const std::size_t start = i;
    while (i < s.size()) {
      const char ch = s[i];
      const bool exponent_sign = (ch == '+' || ch == '-') && i > start &&
                                 (s[i - 1] == 'e' || s[i - 1] == 'E');
      if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '.' || ch == '/' ||
          ch == 'e' || ch == 'E' || exponent_sign) {
        ++i;
      } else {
        break;
      }
    }
    c.number = s.substr(start, i - start);
    if (i < s.size() && s[i] == 'i') {
      c.imaginary = true;
      ++i;
    }
    if (c.number.empty() && !c.imaginary) parse_fail(original, "malformed number");
    parts.push_back(std::move(c));
  }
  if (parts.size() > 2) parse_fail(original, "too many components");
  if (parts.size() == 2 && parts[0].imaginary == parts[1].imaginary) {
    parse_fail(original, "expected one real and one imaginary component");
  }
  return parts;
}

template <typename T, typename Convert>
std::pair<T, T> parse_components(std::string_view text, Convert convert) {
  const std::string s = strip_spaces(text);
  T re{}, im{};
  for (const auto& c : split_components(text, s)) {
    T value = c.number.empty() ? T(1) : convert(text, c.number);
    if (c.negative) value = -value;
    (c.imaginary ? im : re) = value;
  }
  return {re, im};
}

std::pair<std::string_view, std::optional<std::string_view>> split_ratio(std::string_view n) {
  const auto slash = n.find('/');
  if (slash == std::string_view::npos) return {n, std::nullopt};
  return {n.substr(0, slash), n.substr(slash + 1)};
}

Rational to_rational(std::string_view original, std::string_view number) {
  const auto [num, den] = split_ratio(number);
  if (!is_decimal(num) || (den && !is_decimal(*den))) parse_fail(original, "malformed number");
  Rational value = exact_decimal(num);
  if (den) {
    const Rational d = exact_decimal(*den);
    if (d == 0) parse_fail(original, "zero denominator");
    value /= d;
  }
  return value;
}

double to_double(std::string_view original, std::string_view number) {
  const auto [num, den] = split_ratio(number);
  if (!is_decimal(num) || (den && !is_decimal(*den))) parse_fail(original, "malformed number");
  double value = std::strtod(std::string(num).c_str(), nullptr);
  if (den) {
    const double d = std::strtod(std::string(*den).c_str(), nullptr);
    if (d == 0.0) parse_fail(original, "zero denominator");
    value /= d;
  }
  return value;
}

std::vector<std::string_view> split_commas(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    out.push_back(text.substr(start, comma == std::string_view::npos ? text.npos : comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace

GaussianRational parse_gaussian_rational(std::string_view text) {
  auto [re, im] = parse_components<Rational>(text, to_rational);
  return {re, im};
}

cdouble parse_complex(std::string_view text) {
  auto [re, im] = parse_components<double>(text, to_double);
  return {re, im};
}

CurvePoint parse_point(std::string_view text) {
  const std::string s = strip_spaces(text);
  if (s == "inf") return CurvePoint::infinity();
  return CurvePoint::affine(parse_complex(s));
}

std::vector<ParsedTerm> parse_divisor_terms(std::string_view text) {
  std::vector<ParsedTerm> terms;
  if (strip_spaces(text).empty()) return terms;
  for (std::string_view raw : split_commas(text)) {
    const std::string term = strip_spaces(raw);
    const auto at = term.find('@');
    if (at == std::string::npos || term.find('@', at + 1) != std::string::npos) {
      parse_fail(text, "term '" + term + "' must look like coeff@point");
    }
    ParsedTerm parsed;
    parsed.coeff = parse_gaussian_rational(term.substr(0, at));
    const std::string point = term.substr(at + 1);
    if (point.size() >= 2 && (point[0] == 'Q' || point[0] == 'q')) {
      const std::string digits = point.substr(1);
      if (!std::all_of(digits.begin(), digits.end(),
                       [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
        parse_fail(text, "bad mark reference '" + point + "'");
      }
      const unsigned long index = std::stoul(digits);
      if (index == 0) parse_fail(text, "mark references are 1-based");
      parsed.site = static_cast<std::size_t>(index - 1);
    } else {
      parsed.site = parse_point(point);
    }
    terms.push_back(std::move(parsed));
  }
  return terms;
}

ComplexDivisor parse_divisor(std::string_view text, const MarkedCurvePtr& context) {
  std::vector<DivisorTerm> terms;
  for (auto& t : parse_divisor_terms(text)) terms.push_back({t.site, t.coeff});
  return ComplexDivisor::make(context, terms);
}

std::vector<CurvePoint> parse_point_list(std::string_view text) {
  std::vector<CurvePoint> points;
  if (strip_spaces(text).empty()) return points;
  for (std::string_view item : split_commas(text)) points.push_back(parse_point(item));
  return points;
}

}  // namespace divpair
