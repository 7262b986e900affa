#include <cstdlib>
#include <sstream>

#include "doctest.h"
#include "limitfem/config.hpp"

using namespace limitfem;

namespace {

RunConfig parse(const std::string& text, RunConfig base = {}) {
  std::istringstream in(text);
  return parse_config(in, std::move(base));
}

}  // namespace

TEST_CASE("empty input gives the default parameters") {
  const RunConfig c = parse("");
  CHECK(c.material == MaterialParams{});
  CHECK(c.material.lambda == 1.0);
  CHECK(c.material.mu == 1.0);
  CHECK(c.material.a == 0.5);
  CHECK(c.material.beta == 0.02);
  CHECK(c.material.g == -10.0);
  CHECK(c.material.k == 20.0);
  CHECK(c.material.alpha_T == 0.1);
  CHECK(c.material.alpha() == doctest::Approx(0.5));
  CHECK(c.tol == 1e-8);
  CHECK(c.max_iter == 50);
  CHECK(c.refinements == 7);
  CHECK_NOTHROW(c.validate());
}

TEST_CASE("values, comments and blank lines") {
  const RunConfig c = parse(
      "# a comment\n"
      "domain = example2\n"
      "\n"
      "case = 2   # trailing comment\n"
      "model=linear\n"
      "beta = 0.01\n"
      "export_vtk = false\n");
  CHECK(c.domain == Domain::Example2);
  CHECK(c.temperature_case == TemperatureCase::Case2);
  CHECK(c.model == Model::Linear);
  CHECK(c.material.beta == 0.01);
  CHECK_FALSE(c.exports.vtk);
  CHECK(c.exports.csv);
}

TEST_CASE("errors carry key and line") {
  auto expect = [](const std::string& text, const std::string& key, int line) {
    try {
      (void)parse(text);
      FAIL("expected a configuration error");
    } catch (const ConfigError& e) {
      CHECK(e.key() == key);
      CHECK(e.line() == line);
    }
  };
  expect("model = linear\ncolour = blue\n", "colour", 2);
  expect("\n\nrefinements = seven\n", "refinements", 3);
  expect("beta = 0.0.1\n", "beta", 1);
  expect("domain = example3\n", "domain", 1);
  expect("refinements = 7\nexport_csv = maybe\n", "export_csv", 2);
  expect("tol =\n", "tol", 1);
  expect("just words\n", "just words", 1);
}

TEST_CASE("beta = 0 is rejected for the nonlinear model") {
  RunConfig c = parse("beta = 0\n");
  try {
    c.validate();
    FAIL("expected a validation error");
  } catch (const ConfigError& e) {
    CHECK(e.key() == "beta");
  }
  c.model = Model::Linear;
  CHECK_NOTHROW(c.validate());
}

TEST_CASE("other invariants") {
  RunConfig c;
  c.max_iter = 0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = {};
  c.tol = -1.0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = {};
  c.material.mu = 0.0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
}

TEST_CASE("flags override file values") {
  RunConfig c = parse("refinements = 7\nmodel = linear\n");
  apply_setting(c, "refinements", "3");
  CHECK(c.refinements == 3);
  CHECK(c.model == Model::Linear);
}

TEST_CASE("serialization round trip") {
  RunConfig c;
  c.domain = Domain::Example2;
  c.temperature_case = TemperatureCase::Case2;
  c.model = Model::Linear;
  c.refinements = 4;
  c.material.beta = 0.1 / 3.0;
  c.material.lambda = 2.5;
  c.tol = 3e-11;
  c.outdir = "some/where";
  c.exports.profile = false;
  c.workers = 3;
  c.cycles = 5;
  CHECK(parse(serialize_config(c)) == c);
  CHECK(parse(serialize_config(RunConfig{})) == RunConfig{});
  // Every key appears once.
  const std::string text = serialize_config(c);
  for (const auto& key : config_keys()) CHECK(text.find(key + " = ") != std::string::npos);
}

TEST_CASE("output directory fallback") {
  ::setenv("LIMITFEM_OUTDIR", "/tmp/from_env", 1);
  CHECK(default_outdir() == "/tmp/from_env");
  ::unsetenv("LIMITFEM_OUTDIR");
  CHECK(default_outdir() == "results");
}

TEST_CASE("enum parsing") {
  CHECK(parse_domain("Example1") == Domain::Example1);
  CHECK(parse_case("case2") == TemperatureCase::Case2);
  CHECK(parse_model("nonlinear") == Model::Nonlinear);
  CHECK_THROWS_AS(parse_model("quadratic"), std::invalid_argument);
}
