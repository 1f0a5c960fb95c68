#include "commands.hpp"

#include <fstream>
#include <sstream>

#include "divpair/errors.hpp"
#include "divpair/literal.hpp"
#include "divpair/momentum.hpp"
#include "divpair/mvf.hpp"
#include "divpair/pairing.hpp"
#include "divpair/properties.hpp"

namespace divpair::cli {

namespace {

constexpr double kFormulaTol = 1e-12;
constexpr double kReciprocityTol = 1e-9;

CurveModel make_curve(const std::string& kind, const std::string& tau) {
  if (kind == "sphere") {
    if (!tau.empty()) fail(ErrorKind::Parse, "--tau is only meaningful on the torus");
    return CurveModel::sphere();
  }
  if (kind == "torus") {
    if (tau.empty()) fail(ErrorKind::Parse, "--tau is required for the torus");
    return CurveModel::torus(parse_complex(tau));
  }
  fail(ErrorKind::Parse, "unknown curve '" + kind + "'");
}

// Without --marks, free points that carry a non-integral coefficient
// become marks in order of first appearance.
MarkedCurvePtr make_context(const CurveArgs& args, const std::vector<std::string>& divisors) {
  const CurveModel curve = make_curve(args.curve, args.tau);
  if (args.marks) return MarkedCurve::create(curve, parse_point_list(*args.marks));
  std::vector<CurvePoint> marks;
  for (const auto& text : divisors) {
    for (const auto& term : parse_divisor_terms(text)) {
      if (std::holds_alternative<std::size_t>(term.site)) {
        fail(ErrorKind::Parse, "mark reference without --marks");
      }
      if (term.coeff.is_integer()) continue;
      const auto& p = std::get<CurvePoint>(term.site);
      bool known = false;
      for (const auto& q : marks) known = known || curve.same_point(p, q);
      if (!known) marks.push_back(p);
    }
  }
  return MarkedCurve::create(curve, marks);
}

Json point_json(const CurvePoint& p) {
  return p.at_infinity ? Json("inf") : complex_json(p.z);
}

Json curve_json(const MarkedCurve& ctx) {
  Json j{{"curve", ctx.curve().is_torus() ? "torus" : "sphere"}};
  if (ctx.curve().is_torus()) j["tau"] = complex_json(ctx.curve().tau());
  Json marks = Json::array();
  for (const auto& m : ctx.marks()) marks.push_back(point_json(m));
  j["marks"] = marks;
  return j;
}

Json base_report(const std::string& command, const Json& inputs) {
  return Json{{"command", command}, {"inputs", inputs}, {"outputs", Json::object()},
              {"metadata", Json::object()}, {"status", "pass"}};
}

// "zeros:<points>;poles:<points>[;const:<c>]", repeated points add multiplicity.
RationalFunction parse_function(const CurveModel& curve, const std::string& text) {
  std::vector<std::pair<CurvePoint, long long>> zp;
  cdouble constant = 1.0;
  std::stringstream in(text);
  std::string section;
  while (std::getline(in, section, ';')) {
    const auto colon = section.find(':');
    if (colon == std::string::npos) fail(ErrorKind::Parse, "expected key:value in '" + section + "'");
    std::string key = section.substr(0, colon);
    std::erase_if(key, [](unsigned char ch) { return std::isspace(ch); });
    const std::string value = section.substr(colon + 1);
    if (key == "zeros" || key == "poles") {
      const long long m = key == "zeros" ? 1 : -1;
      if (value.find_first_not_of(" \t") == std::string::npos) continue;
      for (const auto& p : parse_point_list(value)) zp.emplace_back(p, m);
    } else if (key == "const") {
      constant = parse_complex(value);
    } else {
      fail(ErrorKind::Parse, "unknown function key '" + key + "'");
    }
  }
  return RationalFunction::make(curve, std::move(zp), constant);
}

Json function_json(const RationalFunction& f) {
  Json zp = Json::array();
  for (const auto& [p, m] : f.zeros_poles()) {
    zp.push_back(Json{{"point", point_json(p)}, {"multiplicity", m}});
  }
  return Json{{"zeros_poles", zp}, {"constant", complex_json(f.leading_constant())},
              {"divisor", f.divisor().to_string()}};
}

Json certificate_json(const MonodromyCertificate& m) {
  return Json{{"base_point", complex_json(m.base_point)},
              {"a_period_raw", complex_json(m.a_period_raw)},
              {"b_period_raw", complex_json(m.b_period_raw)},
              {"correction", complex_json(m.correction)},
              {"a_period", complex_json(m.a_period)},
              {"b_period", complex_json(m.b_period)},
              {"a_multiple", m.a_multiple},
              {"b_multiple", m.b_multiple},
              {"a_residual", m.a_residual},
              {"b_residual", m.b_residual},
              {"contour_margin", m.contour_margin},
              {"periods_integral", m.periods_integral}};
}

Json descriptor_json(const ClassDescriptor& c) {
  return Json{{"degree", c.degree},
              {"jacobian", c.jacobian ? complex_json(*c.jacobian) : Json(nullptr)}};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Parse, "cannot read '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string literal_of(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number()) {
    std::ostringstream s;
    s.precision(17);
    s << v.get<double>();
    return s.str();
  }
  fail(ErrorKind::Parse, "expected a complex literal, got " + v.dump());
}

}  // namespace

Outcome cmd_green(const CurveArgs& c, const std::string& divisor, const std::string& at,
                  double shift) {
  const auto ctx = make_context(c, {divisor});
  const auto d = parse_divisor(divisor, ctx);
  const auto z = parse_point(at);
  Json inputs = curve_json(*ctx);
  inputs["divisor"] = d.to_string();
  inputs["at"] = point_json(z);
  Outcome out{base_report("green", inputs)};
  out.report["outputs"]["value"] = complex_json(green_divisor(d, z, {shift}));
  out.report["metadata"]["kernel_shift"] = shift;
  out.report["metadata"]["kernel"] =
      ctx->curve().is_torus() ? "log|theta1(u)| - pi (Im u)^2 / Im tau" : "log|z - w|";
  return out;
}

Outcome cmd_pairing(const CurveArgs& c, const std::string& d1_text, const std::string& d2_text,
                    const std::string& formula, double shift, double tol_scale) {
  std::optional<PairingFormula> chosen;
  if (formula != "all") {
    chosen = parse_formula(formula);
    if (!chosen) fail(ErrorKind::Parse, "unknown formula '" + formula + "'");
  }
  const auto ctx = make_context(c, {d1_text, d2_text});
  const auto d1 = parse_divisor(d1_text, ctx);
  const auto d2 = parse_divisor(d2_text, ctx);
  const auto ev = evaluate_pairing(d1, d2, {shift});

  Json inputs = curve_json(*ctx);
  inputs["d1"] = d1.to_string();
  inputs["d2"] = d2.to_string();
  inputs["formula"] = formula;
  Outcome out{base_report("pairing", inputs)};
  auto& o = out.report["outputs"];
  o["hermitian_value"] = complex_json(ev.hermitian_value);
  const double threshold = kFormulaTol * tol_scale;
  if (chosen) {
    const double e = ev.exponent(*chosen);
    o["exponent"] = e;
    o["norm"] = std::exp(e);
  } else {
    Json exps, norms;
    for (auto f : {PairingFormula::Ad, PairingFormula::AdSym, PairingFormula::Ad3}) {
      exps[std::string(formula_name(f))] = ev.exponent(f);
      norms[std::string(formula_name(f))] = std::exp(ev.exponent(f));
    }
    o["exponents"] = exps;
    o["norms"] = norms;
    o["exponent"] = ev.ad3;
    o["norm"] = std::exp(ev.ad3);
    o["max_discrepancy"] = ev.max_discrepancy();
    out.pass = ev.max_discrepancy() <= threshold;
  }
  auto& m = out.report["metadata"];
  m["kernel_shift"] = shift;
  m["discrepancy_threshold"] = threshold;
  m["imaginary_leftover"] = Json{{"ad", ev.ad_imag}, {"adsym", ev.adsym_imag}};
  if (!out.pass) out.report["status"] = "fail";
  return out;
}

Outcome cmd_reciprocity(const CurveArgs& c, const std::string& f_text, const std::string& g_text,
                        double tol_scale) {
  const CurveModel curve = make_curve(c.curve, c.tau);
  const auto f = parse_function(curve, f_text);
  const auto g = parse_function(curve, g_text);
  const auto r = check_weil_reciprocity(f, g);
  Json inputs{{"curve", curve.is_torus() ? "torus" : "sphere"}, {"f", function_json(f)},
              {"g", function_json(g)}};
  if (curve.is_torus()) inputs["tau"] = complex_json(curve.tau());
  Outcome out{base_report("reciprocity", inputs)};
  out.report["outputs"] = Json{{"f_of_div_g", complex_json(r.f_of_div_g)},
                               {"g_of_div_f", complex_json(r.g_of_div_f)},
                               {"residual", r.residual}};
  const double threshold = kReciprocityTol * tol_scale;
  out.report["metadata"]["residual_threshold"] = threshold;
  out.pass = r.residual < threshold;
  if (!out.pass) out.report["status"] = "fail";
  return out;
}

Outcome cmd_class(const CurveArgs& c, const std::string& divisor,
                  const std::optional<std::string>& other) {
  std::vector<std::string> texts{divisor};
  if (other) texts.push_back(*other);
  const auto ctx = make_context(c, texts);
  const auto d = parse_divisor(divisor, ctx);
  Json inputs = curve_json(*ctx);
  inputs["divisor"] = d.to_string();

  // With a second divisor the class of the difference is examined.
  ComplexDivisor subject = d;
  Json outputs;
  outputs["descriptor"] = descriptor_json(class_invariant(d));
  if (other) {
    const auto e = parse_divisor(*other, ctx);
    inputs["other"] = e.to_string();
    outputs["other_descriptor"] = descriptor_json(class_invariant(e));
    outputs["equivalent"] = class_invariant(d).equivalent(class_invariant(e));
    subject = d - e;
  }
  const auto p = is_principal(subject);
  outputs["principal"] = p.principal;
  outputs["degree"] = p.degree;
  if (p.abel_jacobi) {
    outputs["abel_jacobi"] = Json{{"raw", complex_json(p.abel_jacobi->raw)},
                                  {"reduced", complex_json(p.abel_jacobi->reduced)}};
    outputs["lattice_distance"] = p.lattice_distance;
  }
  if (p.monodromy) outputs["monodromy"] = certificate_json(*p.monodromy);
  Outcome out{base_report("class", inputs)};
  out.report["outputs"] = outputs;
  out.report["metadata"]["lattice_tolerance"] = kAbelJacobiLatticeTol;
  out.report["metadata"]["monodromy_tolerance"] = kMonodromyTol;
  return out;
}

Outcome cmd_string_factor(const std::string& config_path, double shift) {
  Json cfg;
  try {
    cfg = Json::parse(read_file(config_path));
  } catch (const Json::exception& e) {
    fail(ErrorKind::Parse, std::string("config: ") + e.what());
  }
  if (!cfg.is_object() || !cfg.contains("momenta") || !cfg.contains("marks")) {
    fail(ErrorKind::Parse, "config needs 'marks' and 'momenta'");
  }
  CurveArgs c;
  if (cfg.contains("curve")) c.curve = literal_of(cfg["curve"]);
  if (cfg.contains("tau")) c.tau = literal_of(cfg["tau"]);
  std::vector<CurvePoint> marks;
  if (!cfg["marks"].is_array()) fail(ErrorKind::Parse, "'marks' must be a list");
  for (const auto& m : cfg["marks"]) marks.push_back(parse_point(literal_of(m)));
  const auto ctx = MarkedCurve::create(make_curve(c.curve, c.tau), marks);

  std::vector<Momentum> momenta;
  if (!cfg["momenta"].is_array()) fail(ErrorKind::Parse, "'momenta' must be a list");
  for (const auto& row : cfg["momenta"]) {
    if (!row.is_array() || row.size() != kSpacetimeDim) {
      fail(ErrorKind::Parse, "each momentum needs 13 components");
    }
    Momentum p{};
    for (std::size_t nu = 0; nu < kSpacetimeDim; ++nu) p[nu] = parse_complex(literal_of(row[nu]));
    momenta.push_back(p);
  }
  const auto config = MomentumConfig::make(momenta);
  const auto sf = string_pairing_factor(ctx, config, {shift});

  Json inputs = curve_json(*ctx);
  Json mom = Json::array();
  for (const auto& p : config.momenta()) {
    Json row = Json::array();
    for (const auto& x : p) row.push_back(complex_json(x));
    mom.push_back(row);
  }
  inputs["momenta"] = mom;
  inputs["config"] = config_path;
  Outcome out{base_report("string-factor", inputs)};
  Json components = Json::array();
  for (std::size_t nu = 0; nu < kSpacetimeDim; ++nu) {
    components.push_back(Json{{"nu", nu + 1},
                              {"factor", sf.component_factor[nu]},
                              {"exponent", sf.component_exponent[nu]},
                              {"divisor", momentum_divisor(ctx, config, nu + 1).to_string()}});
  }
  out.report["outputs"] = Json{{"factor", sf.factor}, {"exponent", sf.exponent},
                               {"components", components}};
  out.report["metadata"] = Json{{"diagonal_terms", sf.diagonal_omitted ? "omitted" : "included"},
                                {"kernel_shift", shift},
                                {"momentum_denominator", kMomentumDenominator}};
  return out;
}

Outcome cmd_selftest(std::uint64_t seed, std::size_t cases, double tol_scale) {
  SelftestOptions opts;
  opts.seed = seed;
  opts.cases = cases;
  opts.tolerance_scale = tol_scale;
  const auto report = run_selftest(opts);
  char hex[32];
  std::snprintf(hex, sizeof hex, "0x%llX", static_cast<unsigned long long>(seed));
  Outcome out{base_report("selftest", Json{{"seed", hex}, {"cases", cases}})};
  Json rows = Json::array();
  std::size_t failed = 0;
  for (const auto& r : report.rows) {
    rows.push_back(Json{{"module", r.module},
                        {"property", r.property},
                        {"cases", r.cases},
                        {"max_residual", r.max_residual},
                        {"threshold", r.threshold},
                        {"pass", r.pass},
                        {"error", r.error}});
    failed += r.pass ? 0 : 1;
  }
  out.report["outputs"] = Json{{"rows", rows}, {"failed", failed}};
  out.report["metadata"]["tolerance_scale"] = tol_scale;
  out.pass = report.pass();
  if (!out.pass) out.report["status"] = "fail";
  return out;
}

}  // namespace divpair::cli
