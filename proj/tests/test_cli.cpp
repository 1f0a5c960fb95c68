#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " '" DIVPAIR_CLI_PATH "' " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string stderr_of(const std::string& args) {
  const std::string cmd = "'" DIVPAIR_CLI_PATH "' " + args + " 2>&1 >/dev/null";
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  pclose(pipe);
  return out;
}

nlohmann::json parse(const Run& r) { return nlohmann::json::parse(r.out); }

}  // namespace

TEST_CASE("green examples") {
  auto r = run("green --curve sphere --divisor '1@2,-1@-2' --at 1");
  REQUIRE(r.code == 0);
  auto j = parse(r);
  CHECK(j["outputs"]["value"]["re"].get<double>() ==
        doctest::Approx(-1.09861228866810969).epsilon(1e-15));
  CHECK(j["status"] == "pass");

  r = run("green --curve sphere --divisor '' --at 1");
  REQUIRE(r.code == 0);
  CHECK(parse(r)["outputs"]["value"]["re"].get<double>() == 0.0);

  r = run("green --curve sphere --divisor '1@2' --at 1");
  CHECK(r.code == 3);
  CHECK(stderr_of("green --curve sphere --divisor '1@2' --at 1").find("degree must be zero") !=
        std::string::npos);

  CHECK(run("green --curve sphere --divisor '1@2,-1@' --at 1").code == 2);
  CHECK(run("green --curve sphere --divisor '1@2,-1@3' --at 2").code == 3);
  CHECK(run("green --curve torus --divisor '1@0.2,-1@0.7' --at 0.4").code == 2);  // no tau
  CHECK(run("green --curve torus --tau -i --divisor '1@0.2,-1@0.7' --at 0.4").code == 3);
  CHECK(run("green --curve torus --tau i --divisor '1@0.2,-1@0.7' --at 0.4").code == 0);
}

TEST_CASE("pairing examples") {
  auto r = run("pairing --curve sphere --d1 '1@1,-1@-1' --d2 '1@2,-1@-2'");
  REQUIRE(r.code == 0);
  auto j = parse(r);
  CHECK(std::abs(j["outputs"]["norm"].get<double>() - 1.0 / 9.0) < 1e-14);
  CHECK(j["outputs"]["max_discrepancy"].get<double>() < 1e-12);
  CHECK(j["outputs"]["norms"].contains("adsym"));

  r = run("pairing --curve sphere --marks '1,-1,2,-2' --d1 'i@Q1,-i@Q2' --d2 '1@Q3,-1@Q4'");
  REQUIRE(r.code == 0);
  CHECK(std::abs(parse(r)["outputs"]["norm"].get<double>() - 1.0) < 1e-15);

  // Marks inferred from the non-integral coefficients.
  r = run("pairing --curve sphere --d1 'i@1,-i@-1' --d2 '1@2,-1@-2' --formula ad");
  REQUIRE(r.code == 0);
  j = parse(r);
  CHECK(j["inputs"]["marks"].size() == 2);
  CHECK(std::abs(j["outputs"]["norm"].get<double>() - 1.0) < 1e-15);

  CHECK(run("pairing --curve sphere --d1 '1@1,-1@-1' --d2 '1@1,-1@3'").code == 3);
  CHECK(stderr_of("pairing --curve sphere --d1 '1@1,-1@-1' --d2 '1@1,-1@3'")
            .find("divisors not disjoint") != std::string::npos);
  CHECK(run("pairing --curve sphere --d1 '1@1,-1@-1' --d2 '1@2,-1@-2' --formula ad4").code == 2);
  CHECK(run("pairing --curve sphere --d1 'i@Q1' --d2 '1@2,-1@-2'").code == 2);
}

TEST_CASE("reciprocity and class examples") {
  auto r = run("reciprocity --curve sphere --f 'zeros:0;poles:2' --g 'zeros:1;poles:3'");
  REQUIRE(r.code == 0);
  auto j = parse(r);
  CHECK(j["outputs"]["residual"].get<double>() < 1e-15);
  CHECK(j["outputs"]["f_of_div_g"]["re"].get<double>() == doctest::Approx(-1.0 / 3.0));
  CHECK(j["outputs"]["g_of_div_f"]["re"].get<double>() == doctest::Approx(-1.0 / 3.0));
  CHECK(run("reciprocity --curve sphere --f 'zeros:0;poles:2' --g 'zeros:0;poles:3'").code == 3);
  CHECK(run("reciprocity --curve sphere --f 'zeroes:0' --g 'zeros:1'").code == 2);
  r = run("reciprocity --curve torus --tau i --f 'zeros:0.1,0.6+0.3i;poles:0.2+0.1i,0.5+0.2i' "
          "--g 'zeros:0.3+0.5i,0.8+0.7i;poles:0.4+0.6i,0.7+0.6i'");
  REQUIRE(r.code == 0);
  CHECK(parse(r)["outputs"]["residual"].get<double>() < 1e-9);

  r = run("class --curve torus --tau i --divisor '1@0.25,-1@0.75'");
  REQUIRE(r.code == 0);
  j = parse(r);
  CHECK(j["outputs"]["descriptor"]["degree"] == 0);
  CHECK(j["outputs"]["descriptor"]["jacobian"]["re"].get<double>() == doctest::Approx(0.5));
  CHECK(std::abs(j["outputs"]["descriptor"]["jacobian"]["im"].get<double>()) < 1e-15);
  CHECK(j["outputs"]["principal"] == false);
  CHECK(j["outputs"]["monodromy"]["periods_integral"] == false);

  r = run("class --curve torus --tau i --divisor '1@0.25,-1@0.75' --other '1@0.5,-1@0'");
  REQUIRE(r.code == 0);
  j = parse(r);
  CHECK(j["outputs"]["equivalent"] == true);
  CHECK(j["outputs"]["principal"] == true);
  CHECK(j["outputs"]["monodromy"]["periods_integral"] == true);

  r = run("class --curve sphere --divisor '1@0,-1@1'");
  REQUIRE(r.code == 0);
  CHECK(parse(r)["outputs"]["descriptor"]["jacobian"].is_null());
}

TEST_CASE("string-factor config") {
  const auto path = std::filesystem::temp_directory_path() / "divpair_cli_config.json";
  {
    std::ofstream out(path);
    out << R"({"curve": "sphere", "marks": ["0", "3"],
               "momenta": [["1","0","0","0","0","0","0","0","0","0","0","0","0"],
                           ["-1","0","0","0","0","0","0","0","0","0","0","0","0"]]})";
  }
  auto r = run("string-factor --config '" + path.string() + "'");
  REQUIRE(r.code == 0);
  auto j = parse(r);
  CHECK(std::abs(j["outputs"]["factor"].get<double>() - 1.0 / 9.0) < 1e-12);
  CHECK(j["metadata"]["diagonal_terms"] == "omitted");
  CHECK(j["outputs"]["components"].size() == 13);

  {
    std::ofstream out(path);
    out << R"({"curve": "sphere", "marks": ["0", "3"],
               "momenta": [["1","0","0","0","0","0","0","0","0","0","0","0","0"],
                           ["-1","1","0","0","0","0","0","0","0","0","0","0","0"]]})";
  }
  CHECK(run("string-factor --config '" + path.string() + "'").code == 3);
  {
    std::ofstream out(path);
    out << "{not json";
  }
  CHECK(run("string-factor --config '" + path.string() + "'").code == 2);
  CHECK(run("string-factor --config /nonexistent/divpair.json").code == 2);
  std::filesystem::remove(path);
}

TEST_CASE("determinism, csv, tolerance override") {
  const std::string cmd = "selftest --seed 42 --cases 20";
  const auto a = run(cmd);
  const auto b = run(cmd);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(parse(a)["inputs"]["seed"] == "0x2A");

  const auto csv = run("--format csv " + cmd);
  CHECK(csv.code == 0);
  CHECK(csv.out.rfind("cases,error,max_residual,module,pass,property,threshold\n", 0) == 0);

  const auto flat = run("--format csv pairing --d1 '1@1,-1@-1' --d2 '1@2,-1@-2'");
  CHECK(flat.out.find("outputs.norm,0.11111111111111") != std::string::npos);

  // A vanishing tolerance makes the residual check fail.
  CHECK(run("reciprocity --f 'zeros:0.5;poles:2' --g 'zeros:1;poles:3'", "DIVPAIR_TOL=1e-30")
            .code == 1);
  CHECK(run(cmd, "DIVPAIR_TOL=abc").code == 2);
  CHECK(run("selftest --seed 0xD1V1").code == 2);
  CHECK(run("bogus").code == 2);
  CHECK(run("").code == 2);
}
