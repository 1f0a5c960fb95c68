#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "report.hpp"

namespace divpair::cli {

struct CurveArgs {
  std::string curve = "sphere";
  std::string tau;
  std::optional<std::string> marks;
};

struct Outcome {
  Json report;
  bool pass = true;
};

Outcome cmd_green(const CurveArgs& c, const std::string& divisor, const std::string& at,
                  double shift);
Outcome cmd_pairing(const CurveArgs& c, const std::string& d1, const std::string& d2,
                    const std::string& formula, double shift, double tol_scale);
Outcome cmd_reciprocity(const CurveArgs& c, const std::string& f, const std::string& g,
                        double tol_scale);
Outcome cmd_class(const CurveArgs& c, const std::string& divisor,
                  const std::optional<std::string>& other);
Outcome cmd_string_factor(const std::string& config_path, double shift);
Outcome cmd_selftest(std::uint64_t seed, std::size_t cases, double tol_scale);

}  // namespace divpair::cli
