#include "slct/config.hpp"
#include "slct/pipeline.hpp"
#include "slct/report.hpp"
#include "slct/validate.hpp"

#include <doctest.h>

using namespace slct;

TEST_CASE("config text parses into the full structure") {
  const std::string text = R"(# example
name = demo
problem.type = schwarzschild
problem.n = 3
pair.1.2.a = -1.5
pair.1.2.b = 0.5
pair.1.3.a = -1
pair.1.3.b = 0.3333333333333333
pair.2.3.a = -0.6
pair.2.3.b = 0.2
seed = 0.7 0 0 0.7 0.96 0.96
options.cluster_tol = 1e-6
options.amplitudes = 1e-4:5e-3:7
options.mode = ambient
outputs.report = out/demo.report.txt
)";
  const auto cfg = parse_config_text(text, "<text>");
  CHECK(cfg.name == "demo");
  CHECK(cfg.problem.type == ProblemSpec::Type::schwarzschild);
  CHECK(cfg.problem.n == 3);
  CHECK(cfg.problem.schwarzschild_pairs.at({1, 2}).first == -1.5);
  CHECK(cfg.problem.schwarzschild_pairs.at({2, 3}).second == 0.2);
  REQUIRE(cfg.seed.has_value());
  CHECK(cfg.seed->size() == 6);
  CHECK(cfg.options.cluster_tol == 1e-6);
  CHECK(cfg.options.amplitude_count == 7);
  CHECK(cfg.options.mode == SpectralMode::ambient);
  CHECK(cfg.outputs.report_path == "out/demo.report.txt");

  const auto model = cfg.problem.build_model();
  CHECK(model.particles() == 3);
}

TEST_CASE("config errors carry the line and field") {
  try {
    parse_config_text("problem.type = banana\n", "demo.cfg");
    FAIL("expected a parse error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::parse);
    const std::string what = e.what();
    CHECK(what.find("demo.cfg:1") != std::string::npos);
    CHECK(what.find("problem.type") != std::string::npos);
  }

  CHECK_THROWS_AS(parse_config_text("unknown.key = 1\n", "x"), Error);
  CHECK_THROWS_AS(parse_config_text("options.modes = -2\n", "x"), Error);
  CHECK_THROWS_AS(parse_config_text("problem.n = 3\nseed = 1 2 3\n", "x"), Error);
  // schwarzschild pair with a missing b
  CHECK_THROWS_AS(
      parse_config_text("problem.type = schwarzschild\npair.1.2.a = -1\n", "x"), Error);
}

TEST_CASE("custom power profiles flow through the config") {
  const std::string text = R"(
problem.type = custom
problem.n = 2
pair.1.2.powers = 1:-12 -2:-6
seed = 0 0.5 0 -0.5
)";
  const auto cfg = parse_config_text(text, "<text>");
  const auto model = cfg.problem.build_model();
  Vector q(4);
  q << 0.0, 0.5, 0.0, -0.5;
  CHECK(model.energy(Configuration(2, q)) == doctest::Approx(-1.0).epsilon(1e-13));
}

TEST_CASE("analysis report round-trips through its text form") {
  auto analysis = run_analysis(preset_config("lj2"));
  run_family(analysis, 1, "", {1e-3, 2e-3});
  analysis.report.warnings.push_back("synthetic warning for the round-trip");

  const std::string text = analysis.report.serialize();
  const AnalysisReport parsed = AnalysisReport::parse(text);
  CHECK(parsed == analysis.report);
  CHECK(parsed.serialize() == text);

  // spot checks on the parsed structure
  CHECK(parsed.case_name == "lj2");
  CHECK(parsed.exit_code == 0);
  CHECK(parsed.orbit.value == analysis.report.orbit.value);
  REQUIRE(parsed.certificates.size() == 1);
  CHECK(parsed.certificates[0].changed);
  REQUIRE(parsed.families.size() == 1);
  CHECK(parsed.families[0].rows.size() == 2);
  CHECK(parsed.warnings.back() == "synthetic warning for the round-trip");
}

TEST_CASE("reports are deterministic") {
  const auto a = run_analysis(preset_config("lj2"));
  const auto b = run_analysis(preset_config("lj2"));
  CHECK(a.report.serialize() == b.report.serialize());
}

TEST_CASE("saddle analyses exit with code two and keep their report") {
  const auto analysis = run_analysis(preset_config("lj3-collinear-1"));
  CHECK(analysis.report.exit_code == 2);
  CHECK(!analysis.hypotheses.minimal);
  CHECK(analysis.certificates.empty());
  CHECK(!analysis.report.serialize().empty());
  // families refuse to run
  Analysis copy = analysis;
  CHECK_THROWS_AS(run_family(copy, 1), Error);
}

TEST_CASE("pipeline on the unit triangle matches the built-in construction") {
  auto cfg = preset_config("schwarzschild-example");
  const auto analysis = run_analysis(cfg);
  CHECK(analysis.report.exit_code == 0);
  CHECK(analysis.admissible() == std::vector<int>{1, 2, 3});
  CHECK(analysis.certificates.size() == 3);

  // the same problem without a seed goes through the triangle construction
  cfg.seed.reset();
  const auto constructed = run_analysis(cfg);
  CHECK(constructed.orbit.q0.distance(0, 1) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(constructed.report.spectral_ambient.betas.size() == 3);
}

TEST_CASE("format_double survives awkward values") {
  for (double v : {0.0, -0.0, 1.0 / 3.0, 1e-300, -1.7976931348623157e308, 144.0,
                   0.1 + 0.2, M_PI}) {
    const std::string s = format_double(v);
    CHECK(std::stod(s) == v);
  }
}

TEST_CASE("perturbed expectations make exactly that validation row fail") {
  auto rows = builtin_validation_rows();
  std::vector<ValidationRow> subset;
  for (const auto& row : rows)
    if (row.name == "lj2-spectrum" || row.name == "lj2-energy") subset.push_back(row);
  REQUIRE(subset.size() == 2);

  auto ok = run_validation(subset);
  CHECK(ok.all_pass);

  for (auto& row : subset)
    if (row.name == "lj2-spectrum") row.expected[2] += 1.0;  // 144 -> 145
  auto bad = run_validation(subset);
  CHECK(!bad.all_pass);
  for (const auto& row : bad.rows) CHECK(row.pass == (row.name == "lj2-energy"));
  CHECK(bad.table().find("FAIL") != std::string::npos);
}

TEST_CASE("validation subset selection") {
  const auto result = run_validation_subset({"lj2-energy"});
  REQUIRE(result.rows.size() == 1);
  CHECK(result.rows[0].pass);
  CHECK_THROWS_AS(run_validation_subset({"no-such-row"}), Error);
}
