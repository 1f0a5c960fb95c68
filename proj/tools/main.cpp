// divpair: command-line front end. Exit codes: 0 pass, 1 property failure,
// 2 parse error, 3 domain error.
#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"
#include "divpair/errors.hpp"

using namespace divpair;
using namespace divpair::cli;

namespace {

enum Exit { kPass = 0, kPropertyFailure = 1, kParseError = 2, kDomainError = 3 };

double tolerance_scale() {
  const char* env = std::getenv("DIVPAIR_TOL");
  if (!env || !*env) return 1.0;
  char* end = nullptr;
  const double v = std::strtod(env, &end);
  if (*end != '\0' || !(v > 0.0) || !std::isfinite(v)) {
    fail(ErrorKind::Parse, "DIVPAIR_TOL must be a positive number");
  }
  return v;
}

std::uint64_t parse_seed(const std::string& text) {
  try {
    std::size_t used = 0;
    const auto v = std::stoull(text, &used, 0);
    if (used == text.size()) return v;
  } catch (const std::exception&) {
  }
  fail(ErrorKind::Parse, "seed '" + text + "' is not an unsigned 64-bit integer");
}

void add_curve_flags(CLI::App* cmd, CurveArgs& c, bool with_marks = true) {
  cmd->add_option("--curve", c.curve, "sphere or torus")->capture_default_str();
  cmd->add_option("--tau", c.tau, "torus modulus, Im tau > 0");
  if (with_marks) {
    cmd->add_option_function<std::string>(
        "--marks", [&c](const std::string& s) { c.marks = s; },
        "comma-separated marked points (default: points with non-integral coefficients)");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Complex divisors, Green kernels and the Arakelov-Deligne pairing norm"};
  app.require_subcommand(1);
  app.fallthrough();  // --format may follow the subcommand
  std::string format = "json";
  app.add_option("--format", format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();

  CurveArgs curve;
  std::string divisor, at, d1, d2, formula = "all", f, g, config, seed = "0xD1B1";
  std::string other;
  double shift = 0.0;
  std::size_t cases = 500;

  auto* green = app.add_subcommand("green", "Green function of a divisor at a point");
  add_curve_flags(green, curve);
  green->add_option("--divisor", divisor)->required();
  green->add_option("--at", at)->required();
  green->add_option("--kernel-shift", shift);

  auto* pairing = app.add_subcommand("pairing", "pairing norm of two degree-0 divisors");
  add_curve_flags(pairing, curve);
  pairing->add_option("--d1", d1)->required();
  pairing->add_option("--d2", d2)->required();
  pairing->add_option("--formula", formula, "ad, adsym, ad3 or all")->capture_default_str();
  pairing->add_option("--kernel-shift", shift);

  auto* reciprocity = app.add_subcommand("reciprocity", "check f(div g) = g(div f)");
  add_curve_flags(reciprocity, curve, false);
  reciprocity->add_option("--f", f, "zeros:<points>;poles:<points>[;const:<c>]")->required();
  reciprocity->add_option("--g", g)->required();

  auto* klass = app.add_subcommand("class", "class invariant and principality");
  add_curve_flags(klass, curve);
  klass->add_option("--divisor", divisor)->required();
  klass->add_option("--other", other, "compare against this divisor");

  auto* strings = app.add_subcommand("string-factor", "pairing factor of momentum divisors");
  strings->add_option("--config", config, "JSON momentum configuration")->required();
  strings->add_option("--kernel-shift", shift);

  auto* selftest = app.add_subcommand("selftest", "randomized property suite");
  selftest->add_option("--seed", seed)->capture_default_str();
  selftest->add_option("--cases", cases)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kParseError;
  }

  Outcome out;
  try {
    const double tol = tolerance_scale();
    if (*green) {
      out = cmd_green(curve, divisor, at, shift);
    } else if (*pairing) {
      out = cmd_pairing(curve, d1, d2, formula, shift, tol);
    } else if (*reciprocity) {
      out = cmd_reciprocity(curve, f, g, tol);
    } else if (*klass) {
      out = cmd_class(curve, divisor, klass->count("--other") ? std::optional(other) : std::nullopt);
    } else if (*strings) {
      out = cmd_string_factor(config, shift);
    } else {
      out = cmd_selftest(parse_seed(seed), cases, tol);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.kind() == ErrorKind::Parse ? kParseError : kDomainError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDomainError;
  }

  if (format == "csv") {
    write_csv(std::cout, out.report);
  } else {
    write_json(std::cout, out.report);
  }
  return out.pass ? kPass : kPropertyFailure;
}
