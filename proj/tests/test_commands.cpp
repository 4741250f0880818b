#include <doctest.h>

#include <cmath>
#include <sstream>

#include <json.hpp>

#include "yayambo/commands.hpp"

using namespace yayambo;
using nlohmann::json;
using AC = ArtificialClassifier;

namespace {

std::vector<PredictionRecord> records_from(const std::string& jsonl) {
  std::istringstream in(jsonl);
  return parse_jsonl(in);
}

std::vector<json> lines_of(const std::string& text) {
  std::vector<json> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) out.push_back(json::parse(line));
  return out;
}

const std::string kTableOne =
    R"({"obs_id":"t1","predictions":[[0.3,0.7],[0.8,0.2]]})"
    "\n";

RunConfig only(Rule r) {
  RunConfig cfg;
  cfg.rules = {r};
  return cfg;
}

}  // namespace

TEST_CASE("fuse with the sum rule") {
  std::ostringstream out, diag;
  CHECK(cmd_fuse(records_from(kTableOne), only(Rule::Sum), out, diag) == kExitOk);
  const auto lines = lines_of(out.str());
  REQUIRE(lines.size() == 1);
  CHECK(lines[0]["obs_id"] == "t1");
  CHECK(lines[0]["rule"] == "sum");
  CHECK(lines[0]["fused"][0].get<double>() == doctest::Approx(0.55));
  CHECK(lines[0]["decision"] == 0);
  CHECK_FALSE(lines[0].contains("iterations"));
}

TEST_CASE("fuse with trace reproduces the two-member trajectory") {
  auto cfg = only(Rule::Yayambo);
  cfg.trace = true;
  std::ostringstream out, diag;
  CHECK(cmd_fuse(records_from(kTableOne), cfg, out, diag) == kExitOk);
  const auto lines = lines_of(out.str());
  REQUIRE(lines.size() == 1);
  const auto& r = lines[0];
  CHECK(r["iterations"] == 7);
  CHECK(r["converged"] == true);
  const auto& traj = r["trajectory"];
  REQUIRE(traj.size() == 8);
  CHECK(traj[0]["difference"].is_null());
  const double expect_first[] = {0.7130, 0.7394, 0.8994, 0.9876};
  const double expect_second[] = {0.5458, 0.7589, 0.8992, 0.9876};
  const double expect_diff[] = {0.9435, 0.3387, 0.4247, 0.2498};
  for (int t = 1; t <= 4; ++t) {
    CHECK(std::abs(traj[t]["distributions"][0][0].get<double>() - expect_first[t - 1]) < 5e-5);
    CHECK(std::abs(traj[t]["distributions"][1][0].get<double>() - expect_second[t - 1]) < 5e-5);
    CHECK(std::abs(traj[t]["difference"].get<double>() - expect_diff[t - 1]) < 5e-5);
  }
  CHECK(traj[1]["fused"][0].get<double>() == doctest::Approx(0.6294).epsilon(1e-4));
}

TEST_CASE("rule all fans out") {
  std::ostringstream out, diag;
  const auto recs = records_from(kTableOne + kTableOne);
  CHECK(cmd_fuse(recs, RunConfig{}, out, diag) == kExitOk);
  const auto lines = lines_of(out.str());
  REQUIRE(lines.size() == 10);
  CHECK(lines[0]["rule"] == "borda");
  CHECK(lines[4]["rule"] == "yayambo");
  CHECK(lines[1]["votes"].size() == 2);
}

TEST_CASE("a failing record does not disturb its neighbours") {
  const auto recs = records_from(kTableOne +
                                 R"({"obs_id":"bad","predictions":[[1,0],[0,1]]})"
                                 "\n" +
                                 kTableOne);
  std::ostringstream out, diag;
  CHECK(cmd_fuse(recs, only(Rule::Product), out, diag) == kExitRecordFailure);
  const auto lines = lines_of(out.str());
  REQUIRE(lines.size() == 3);
  CHECK(lines[1].contains("error"));
  CHECK(lines[0]["fused"] == lines[2]["fused"]);
  CHECK_FALSE(diag.str().empty());

  std::ostringstream alone;
  cmd_fuse(records_from(kTableOne), only(Rule::Product), alone, diag);
  CHECK(lines_of(alone.str())[0] == lines[0]);
}

TEST_CASE("eval on the deterministic artificial ensembles") {
  std::ostringstream diag;
  for (auto classifiers : {std::vector<AC>{AC::F1, AC::F2}, std::vector<AC>{AC::F1, AC::F2, AC::F3}}) {
    const auto recs = to_records(generate({5000, 1, classifiers}));
    const auto report = cmd_eval(recs, RunConfig{}, diag);
    REQUIRE(report.rows.size() == classifiers.size() + 5);
    for (const auto& row : report.rows) {
      if (row.name == "classifier_2") {
        CHECK(row.metrics.accuracy == 0.0);
      } else {
        CHECK(row.metrics.accuracy == 1.0);
      }
    }
    CHECK_FALSE(report.any_failures());
    const auto j = json::parse(eval_to_json(report));
    CHECK(j["observations"] == 10000);
    CHECK(j["rows"].size() == report.rows.size());
    CHECK(eval_to_text(report).find("yayambo") != std::string::npos);
  }
}

TEST_CASE("eval of an always wrong file") {
  const auto recs = records_from(
      R"({"obs_id":"a","label":1,"predictions":[[0.9,0.1],[0.8,0.2]]})"
      "\n"
      R"({"obs_id":"b","label":0,"predictions":[[0.1,0.9],[0.3,0.7]]})"
      "\n");
  std::ostringstream diag;
  const auto report = cmd_eval(recs, RunConfig{}, diag);
  for (const auto& row : report.rows) CHECK(row.metrics.accuracy == 0.0);
}

TEST_CASE("eval requires labels") {
  std::ostringstream diag;
  bool missing = false;
  try {
    cmd_eval(records_from(kTableOne), RunConfig{}, diag);
  } catch (const Error& e) {
    missing = e.code() == ErrorCode::MissingLabels;
  }
  CHECK(missing);
}

TEST_CASE("eval counts records a rule cannot fuse") {
  const auto recs = records_from(
      R"({"obs_id":"a","label":0,"predictions":[[1,0],[0,1]]})"
      "\n"
      R"({"obs_id":"b","label":0,"predictions":[[0.9,0.1],[0.8,0.2]]})"
      "\n");
  std::ostringstream diag;
  const auto report = cmd_eval(recs, RunConfig{}, diag);
  CHECK(report.any_failures());
  for (const auto& row : report.rows) {
    if (row.name == "product" || row.name == "yayambo") {
      CHECK(row.failures == 1);
      CHECK(row.evaluated == 1);
    } else {
      CHECK(row.failures == 0);
    }
  }
}

TEST_CASE("pairwise matrices") {
  const auto recs = to_records(generate({5000, 3, {AC::F1, AC::F2, AC::F3, AC::F4, AC::F5}}));
  const auto report = cmd_pairwise(recs);
  REQUIRE(report.classifiers == 5);
  for (std::size_t i = 0; i < 5; ++i) {
    CHECK(report.prediction_disagreement[i][i] == 0.0);
    CHECK(report.decision_agreement[i][i] == 1.0);
  }
  CHECK(report.prediction_disagreement[0][2] == doctest::Approx(2.8284).epsilon(1e-4));
  CHECK(report.decision_agreement[0][1] == 1.0);
  CHECK(report.decision_agreement[0][2] == 0.0);
  CHECK(report.prediction_disagreement[0][1] == doctest::Approx(std::sqrt(10000 * 2 * 0.39 * 0.39)));

  const auto j = json::parse(pairwise_to_json(report));
  CHECK(j["prediction_disagreement"][2][0].is_null());
  CHECK(j["decision_agreement"][0][1] == 1.0);
  CHECK(pairwise_to_text(report).find("2.8284") != std::string::npos);
}

TEST_CASE("synth output is byte identical for a fixed seed") {
  const ArtificialEnsembleSpec spec{300, 77, {AC::F1, AC::F2, AC::F3, AC::F4, AC::F5}};
  std::ostringstream a, b;
  cmd_synth(spec, RecordFormat::Jsonl, a);
  cmd_synth(spec, RecordFormat::Jsonl, b);
  CHECK(a.str() == b.str());

  std::ostringstream one;
  cmd_synth({1, 0, {AC::F1}}, RecordFormat::Jsonl, one);
  const auto lines = lines_of(one.str());
  REQUIRE(lines.size() == 2);
  CHECK(lines[0]["predictions"][0][0].get<double>() == doctest::Approx(0.51));
  CHECK(lines[1]["predictions"][0][0].get<double>() == doctest::Approx(0.49));
  CHECK(lines[1]["label"] == 1);
}

TEST_CASE("run config validation") {
  CHECK(parse_rule_selection("all")->size() == 5);
  CHECK(parse_rule_selection("borda")->front() == Rule::Borda);
  CHECK_FALSE(parse_rule_selection("median"));
  RunConfig cfg;
  cfg.floor = 0.0;
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg = RunConfig{};
  cfg.params.max_iter = 0;
  CHECK_THROWS_AS(cfg.validate(), Error);
}
