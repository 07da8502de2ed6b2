#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "akm/config.hpp"
#include "akm/report.hpp"
#include "akm/verify.hpp"

using namespace akm;

TEST_CASE("report: pass flags consistent with residual < threshold") {
  Report r;
  r.command = "validate";
  r.add("ok", 1e-10, 1e-9);
  r.add("bad", 1e-3, 1e-9);
  CHECK(r.checks[0].pass);
  CHECK_FALSE(r.checks[1].pass);
  CHECK_FALSE(r.all_pass());
  const auto j = r.stable_json();
  CHECK(j["checks"][0]["pass"] == true);
  CHECK(j["checks"][1]["pass"] == false);
  CHECK(j["pass"] == false);
}

TEST_CASE("dump_json: 17 significant digits, round trip, stability") {
  ordered_json j;
  j["x"] = 0.1;
  j["y"] = -5.0;
  j["z"] = 1.0 / 3.0;
  j["s"] = "quote\"and\\slash";
  j["arr"] = {1.5, 2.5};
  const std::string a = dump_json(j);
  const std::string b = dump_json(j);
  CHECK(a == b);
  CHECK(a.find("0.10000000000000001") != std::string::npos);
  CHECK(a.find("0.33333333333333331") != std::string::npos);
  const ordered_json back = ordered_json::parse(a);
  CHECK(back["x"].get<double>() == 0.1);
  CHECK(back["z"].get<double>() == 1.0 / 3.0);
  CHECK(back["s"].get<std::string>() == "quote\"and\\slash");
}

TEST_CASE("config: parses, validates, echoes") {
  const ordered_json j = ordered_json::parse(R"({
    "model": {"n": 1, "alpha": 1.0, "lambdas": [2.0]},
    "sample_count": 8,
    "seed": 7,
    "beta": 2.0,
    "tolerances": {"tol_curv_analytic": 1e-6}
  })");
  const RunConfig c = RunConfig::from_json(j);
  CHECK(c.model->n == 1);
  CHECK(c.model->lambdas == std::vector<double>{2.0});
  CHECK(c.sample_count == 8);
  CHECK(c.seed == 7);
  CHECK(*c.beta == 2.0);
  CHECK(c.tolerances.tol_curv_analytic == 1e-6);
  const auto echo = c.echo();
  CHECK(echo["model"]["n"] == 1);
  CHECK(echo["seed"] == 7);
}

TEST_CASE("config: invariants rejected") {
  CHECK_THROWS_AS(RunConfig::from_json(ordered_json::parse(R"({"sample_count": 3})")),
                  ConfigParseError);
  CHECK_THROWS_AS(
      RunConfig::from_json(ordered_json::parse(R"({"model": {"n": 1, "alpha": 0.0, "lambdas": [1.0]}})")),
      ConfigParseError);
  CHECK_THROWS_AS(
      RunConfig::from_json(ordered_json::parse(R"({"model": {"n": 2, "alpha": 1.0, "lambdas": [1.0]}})")),
      ConfigParseError);
  CHECK_THROWS_AS(
      RunConfig::from_json(ordered_json::parse(R"({"tolerances": {"tol_deriv": -1.0}})")),
      ConfigParseError);
  CHECK_THROWS_AS(RunConfig::from_json(ordered_json::parse("[1,2]")), ConfigParseError);
}

TEST_CASE("run_validate: catalog model passes end to end") {
  RunConfig cfg;
  cfg.model = LieGroupModelParams{1, 1.0, {2.0}};
  cfg.sample_count = 10;
  const Report r = run_validate(cfg);
  CHECK(r.all_pass());
  CHECK(r.command == "validate");
  CHECK(r.derived["alpha_hat"].get<double>() == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("run_validate: negative alpha is normalized with a note") {
  RunConfig cfg;
  cfg.model = LieGroupModelParams{1, -1.0, {2.0}};
  cfg.sample_count = 10;
  const Report r = run_validate(cfg);
  CHECK(r.all_pass());
  REQUIRE(!r.notes.empty());
  CHECK(r.notes[0].find("normalized") != std::string::npos);
}

TEST_CASE("run_analyze: derived quantities for the kappa-mu model") {
  RunConfig cfg;
  cfg.model = LieGroupModelParams{1, 1.0, {2.0}};
  cfg.sample_count = 10;
  const Report r = run_analyze(cfg);
  CHECK(r.all_pass());
  CHECK(r.derived["nullity_fit"]["kappa"].get<double>() == doctest::Approx(-5.0).epsilon(1e-5));
  CHECK(r.derived["nullity_fit"]["mu"].get<double>() == doctest::Approx(-2.0).epsilon(1e-5));
  CHECK(r.derived["invariant"].get<double>() == doctest::Approx(-5.0).epsilon(1e-5));
  CHECK(r.derived["nullity_fit"]["is_kmu"] == true);
  CHECK(r.derived["locally_symmetric"] == false);
  const auto spectrum = r.derived["spectrum"].get<std::vector<double>>();
  REQUIRE(spectrum.size() == 3);
  CHECK(spectrum[0] == doctest::Approx(-2.0));
  CHECK(spectrum[2] == doctest::Approx(2.0));
}

TEST_CASE("run_analyze: mixed spectrum is reported, not failed") {
  RunConfig cfg;
  cfg.model = LieGroupModelParams{2, 1.0, {1.0, 2.0}};
  cfg.sample_count = 8;
  const Report r = run_analyze(cfg);
  CHECK(r.all_pass()); // is_kmu = false is a classification outcome, not a failure
  CHECK(r.derived["nullity_fit"]["is_kmu"] == false);
  CHECK(r.derived["nullity_fit"]["residual"].get<double>() > 0.1);
}

TEST_CASE("run_analyze: lambda = 1 model is locally symmetric with I = -2") {
  RunConfig cfg;
  cfg.model = LieGroupModelParams{1, 1.0, {1.0}};
  cfg.sample_count = 8;
  const Report r = run_analyze(cfg);
  CHECK(r.all_pass());
  CHECK(r.derived["locally_symmetric"] == true);
  CHECK(r.derived["invariant"].get<double>() == doctest::Approx(-2.0).epsilon(1e-5));
}

TEST_CASE("run_deform: alpha = 2, beta = 2 produces the alpha-hat = 1 structure") {
  RunConfig cfg;
  cfg.model = LieGroupModelParams{1, 2.0, {2.0}};
  cfg.sample_count = 8;
  cfg.beta = 2.0;
  const Report r = run_deform(cfg);
  CHECK(r.all_pass());
  CHECK(r.derived["alpha_after"].get<double>() == doctest::Approx(1.0));
  CHECK(r.derived["kappa_before"].get<double>() == doctest::Approx(-20.0).epsilon(1e-4));
  CHECK(r.derived["kappa_after"].get<double>() == doctest::Approx(-5.0).epsilon(1e-4));
  CHECK(r.derived["invariant_before"].get<double>() ==
        doctest::Approx(r.derived["invariant_after"].get<double>()).epsilon(1e-7));
}

TEST_CASE("run_deform: beta = 1 leaves the derived quantities identical") {
  RunConfig cfg;
  cfg.model = LieGroupModelParams{1, 1.0, {2.0}};
  cfg.sample_count = 8;
  cfg.beta = 1.0;
  const Report r = run_deform(cfg);
  CHECK(r.all_pass());
  CHECK(r.derived["kappa_before"].get<double>() == r.derived["kappa_after"].get<double>());
  CHECK(r.derived["mu_before"].get<double>() == r.derived["mu_after"].get<double>());
  CHECK(r.derived["alpha_before"].get<double>() == r.derived["alpha_after"].get<double>());
}

TEST_CASE("run_deform: d-conformal flag emits kappa_c") {
  RunConfig cfg;
  cfg.model = LieGroupModelParams{1, 1.0, {2.0}};
  cfg.sample_count = 8;
  cfg.beta = 1.0;
  cfg.d_conformal = true;
  const Report r = run_deform(cfg);
  CHECK(r.all_pass());
  CHECK(r.derived["kappa_c"].get<double>() == doctest::Approx(-4.0).epsilon(1e-4));
  CHECK(r.derived["kappa_c_expected"].get<double>() == doctest::Approx(-4.0).epsilon(1e-4));
}

TEST_CASE("run_compare: equivalence verdicts") {
  RunConfig cfg;
  cfg.model = LieGroupModelParams{1, 1.0, {2.0}};
  cfg.model2 = LieGroupModelParams{1, 3.0, {2.0}};
  cfg.sample_count = 8;
  const Report r = run_compare(cfg);
  CHECK(r.derived["equivalent"] == true);
  CHECK(r.derived["witness_beta"].get<double>() == doctest::Approx(1.0 / 3.0));

  cfg.model2 = LieGroupModelParams{2, 1.0, {2.0, 2.0}};
  const Report r2 = run_compare(cfg);
  CHECK(r2.derived["equivalent"] == false);
}

TEST_CASE("reports are byte-stable for a fixed config") {
  RunConfig cfg;
  cfg.model = LieGroupModelParams{1, 1.0, {1.0}};
  cfg.sample_count = 6;
  const Report a = run_validate(cfg);
  const Report b = run_validate(cfg);
  CHECK(dump_json(a.stable_json()) == dump_json(b.stable_json()));
  const Report c = run_analyze(cfg);
  const Report d = run_analyze(cfg);
  CHECK(dump_json(c.stable_json()) == dump_json(d.stable_json()));
}

TEST_CASE("run_selftest: one row per criterion plus labeled details") {
  RunConfig cfg;
  cfg.sample_count = 6;
  const Report r = run_selftest(cfg);
  int criteria = 0;
  bool saw_axiom_b_label = false, saw_cross = false;
  for (const CheckRow& row : r.checks) {
    if (row.name.rfind("criterion-", 0) == 0) {
      ++criteria;
      CHECK(row.threshold == 1.0);
    }
    if (row.name == "tildenabla-axioms-abc") saw_axiom_b_label = true;
    if (row.name == "Rcanonic-cross-oracle") saw_cross = true;
  }
  CHECK(criteria == 12);
  CHECK(saw_axiom_b_label);
  CHECK(saw_cross);
  CHECK(r.all_pass());
}
