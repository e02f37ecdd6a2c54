#include <doctest.h>

#include "revroles/errors.hpp"
#include "revroles/report.hpp"
#include "revroles/serialization.hpp"

using namespace revroles;

namespace {

ValidationReport sample_report() {
  ValidationReport report;
  report.n = 107;
  report.k = 2;
  report.score_corr.r = 0.692;
  report.score_corr.p = 0.0001;
  PurposeFit grammar;
  grammar.purpose = Purpose::Grammar;
  RegressionResult fit;
  fit.r_squared = 0.573;
  fit.n = 107;
  grammar.fit = fit;
  grammar.p_value = 0.0004;
  report.purpose_r2.push_back(grammar);
  PurposeFit organization;
  organization.purpose = Purpose::Organization;
  RegressionResult weak;
  weak.r_squared = 0.043;
  weak.n = 107;
  organization.fit = weak;
  organization.p_value = 0.4;
  report.purpose_r2.push_back(organization);
  RolePartialEntry persuasive;
  persuasive.role = 0;
  persuasive.label = "Persuasive";
  PartialCorrResult pc;
  pc.r = 0.205;
  pc.p_value = 0.035;
  pc.df = 104;
  persuasive.result = pc;
  report.role_partial.push_back(persuasive);
  RolePartialEntry proofreader;
  proofreader.role = 1;
  proofreader.label = "Proofreader";
  PartialCorrResult pc2;
  pc2.r = -0.175;
  pc2.p_value = 0.073;
  pc2.df = 104;
  proofreader.result = pc2;
  report.role_partial.push_back(proofreader);
  report.skipped_purposes.push_back(
      {Purpose::Precision, "no revisions of this purpose in the corpus"});
  return report;
}

}  // namespace

TEST_CASE("correlation cells render as r(p) with three decimals") {
  CHECK(format_r_p(0.205, 0.035) == "0.205(0.035)");
  CHECK(format_r_p(-0.175, 0.073) == "-0.175(0.073)");
}

TEST_CASE("significance stars follow the thresholds") {
  CHECK(significance_stars(0.0004) == "***");
  CHECK(significance_stars(0.004) == "**");
  CHECK(significance_stars(0.04) == "*");
  CHECK(significance_stars(0.05) == "");
  CHECK(significance_stars(0.5) == "");
}

TEST_CASE("render_report shows both tables") {
  const std::string text = render_report(sample_report());
  CHECK(text.find("0.573***") != std::string::npos);
  CHECK(text.find("0.043") != std::string::npos);
  CHECK(text.find("0.205(0.035)") != std::string::npos);
  CHECK(text.find("-0.175(0.073)") != std::string::npos);
  CHECK(text.find("Persuasive") != std::string::npos);
  CHECK(text.find("skipped Precision") != std::string::npos);
  CHECK(text.find("N=107") != std::string::npos);
}

TEST_CASE("reports without roles are rejected") {
  ValidationReport report = sample_report();
  report.role_partial.clear();
  CHECK_THROWS_AS(static_cast<void>(render_report(report)), Error);
}

TEST_CASE("report json round-trips including flags") {
  ValidationReport report = sample_report();
  report.purpose_r2[1].fit.reset();
  report.purpose_r2[1].flag = "target is constant";
  report.role_partial[1].result.reset();
  report.role_partial[1].flag = "degenerate";
  const std::string json = report_to_json(report);
  const ValidationReport reloaded = report_from_json(json, "test");
  CHECK(report_to_json(reloaded) == json);
  CHECK(render_report(reloaded).find("n/a") != std::string::npos);
}
