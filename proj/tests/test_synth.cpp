#include <doctest.h>

#include <cmath>

#include "yayambo/metrics.hpp"
#include "yayambo/synth.hpp"

using namespace yayambo;
using AC = ArtificialClassifier;

TEST_CASE("deterministic classifiers") {
  const auto ds = generate({1, 99, {AC::F1}});
  REQUIRE(ds.size() == 2);
  CHECK(ds.labels == std::vector<std::size_t>{0, 1});
  CHECK(ds.outputs[0][0][0] == doctest::Approx(0.51));
  CHECK(ds.outputs[0][0][1] == doctest::Approx(0.49));
  CHECK(ds.outputs[0][1][0] == doctest::Approx(0.49));
  CHECK(ds.outputs[0][1][1] == doctest::Approx(0.51));
}

TEST_CASE("f1 f2 always right, f3 always wrong") {
  const auto ds = generate({500, 1, {AC::F1, AC::F2, AC::F3}});
  for (std::size_t n = 0; n < ds.size(); ++n) {
    CHECK(decide(ds.outputs[0][n]).class_index == ds.labels[n]);
    CHECK(decide(ds.outputs[1][n]).class_index == ds.labels[n]);
    CHECK(decide(ds.outputs[2][n]).class_index != ds.labels[n]);
    CHECK(ds.outputs[1][n][ds.labels[n]] == doctest::Approx(0.9));
  }
}

TEST_CASE("f1 versus f3 disagreement") {
  const auto ds = generate({5000, 0, {AC::F1, AC::F3}});
  CHECK(prediction_disagreement(ds.outputs[0], ds.outputs[1]) ==
        doctest::Approx(std::sqrt(10000 * 2 * 0.02 * 0.02)).epsilon(1e-9));
}

TEST_CASE("same seed gives identical data; different seed does not") {
  const ArtificialEnsembleSpec spec{200, 42, {AC::F4, AC::F5}};
  const auto a = generate(spec);
  const auto b = generate(spec);
  CHECK(a.outputs == b.outputs);
  auto other = spec;
  other.seed = 43;
  CHECK(generate(other).outputs != a.outputs);
}

TEST_CASE("column order does not change the random stream") {
  const auto a = generate({100, 9, {AC::F4, AC::F5}});
  const auto b = generate({100, 9, {AC::F5, AC::F1, AC::F4}});
  CHECK(a.outputs[0] == b.outputs[2]);
  CHECK(a.outputs[1] == b.outputs[0]);
}

TEST_CASE("random classifiers stay strictly inside the simplex") {
  const auto ds = generate({2000, 5, {AC::F4, AC::F5}});
  for (const auto& column : ds.outputs)
    for (const auto& d : column) {
      CHECK(d[0] > 0.0);
      CHECK(d[0] < 1.0);
    }
}

TEST_CASE("f4 branch frequency and f5 accuracy") {
  const auto ds = generate({5000, 2024, {AC::F4, AC::F5}});
  std::size_t confident = 0;
  for (const auto& d : ds.outputs[0]) confident += std::abs(std::max(d[0], d[1]) - 0.7) < 1e-12;
  CHECK(static_cast<double>(confident) / 10000.0 == doctest::Approx(0.65).epsilon(0.05));
  const double acc5 = accuracy(LabeledPredictions(ds.outputs[1], ds.labels));
  CHECK(std::abs(acc5 - 0.5) < 0.015);
}

TEST_CASE("spec validation and names") {
  CHECK_THROWS_AS(generate({0, 0, {AC::F1}}), Error);
  CHECK_THROWS_AS(generate({10, 0, {}}), Error);
  CHECK(parse_classifier("f4") == AC::F4);
  CHECK(parse_classifier("F2") == AC::F2);
  CHECK_FALSE(parse_classifier("f6"));
}
