#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace divpair {

struct PropertyRow {
  std::string module;
  std::string property;
  std::size_t cases = 0;
  double max_residual = 0.0;
  double threshold = 0.0;  // pass iff max_residual <= threshold
  bool pass = true;
  std::string error;  // set when a case threw instead of producing a residual
};

struct SelftestOptions {
  std::uint64_t seed = 0xD1B1;
  std::size_t cases = 500;
  // Multiplies every nonzero threshold; exact properties stay exact.
  double tolerance_scale = 1.0;
};

struct SelftestReport {
  std::vector<PropertyRow> rows;
  bool pass() const;
};

// Runs the randomized property suite of every module. Deterministic in the seed.
SelftestReport run_selftest(const SelftestOptions& options);

}  // namespace divpair
