#include <doctest.h>

#include <sstream>

#include <json.hpp>

#include "yayambo/records.hpp"

using namespace yayambo;

namespace {

RecordError::Kind kind_of(const std::string& text, RecordFormat format, std::size_t* line = nullptr) {
  std::istringstream in(text);
  try {
    parse_records(in, format);
  } catch (const RecordError& e) {
    if (line) *line = e.line();
    return e.kind();
  }
  FAIL("expected a RecordError");
  return RecordError::Kind::Io;
}

}  // namespace

TEST_CASE("jsonl record") {
  std::istringstream in(R"({"obs_id":"a","label":1,"predictions":[[0.3,0.7],[0.8,0.2]]})"
                        "\n\n");
  const auto recs = parse_jsonl(in);
  REQUIRE(recs.size() == 1);
  CHECK(recs[0].obs_id == "a");
  CHECK(recs[0].label == 1u);
  CHECK(recs[0].predictions.size() == 2);
  CHECK(recs[0].predictions.num_classes() == 2);
  CHECK(recs[0].predictions[1][0] == doctest::Approx(0.8));
  CHECK(recs[0].line == 1);
}

TEST_CASE("csv rows group into the same record") {
  std::istringstream in("obs_id,classifier_idx,label,p0,p1\na,0,1,0.3,0.7\na,1,1,0.8,0.2\nb,0,,0.5,0.5\nb,1,,0.1,0.9\n");
  const auto recs = parse_csv(in);
  REQUIRE(recs.size() == 2);
  CHECK(recs[0].obs_id == "a");
  CHECK(recs[0].label == 1u);
  CHECK(recs[0].predictions[0][1] == doctest::Approx(0.7));
  CHECK(recs[0].predictions[1][0] == doctest::Approx(0.8));
  CHECK_FALSE(recs[1].label);
  CHECK(recs[1].line == 4);
}

TEST_CASE("jsonl and csv agree") {
  std::istringstream j(R"({"obs_id":"a","label":1,"predictions":[[0.3,0.7],[0.8,0.2]]})");
  std::istringstream c("a,0,1,0.3,0.7\na,1,1,0.8,0.2\n");
  const auto a = parse_jsonl(j);
  const auto b = parse_csv(c);
  REQUIRE(a.size() == b.size());
  CHECK(a[0].label == b[0].label);
  CHECK(a[0].predictions.members() == b[0].predictions.members());
}

TEST_CASE("error reporting carries line numbers") {
  std::size_t line = 0;
  CHECK(kind_of("{\"obs_id\":\"a\",\"predictions\":[[0.4,0.4]]}\n", RecordFormat::Jsonl, &line) ==
        RecordError::Kind::InvalidDistribution);
  CHECK(line == 1);

  CHECK(kind_of("{\"obs_id\":\"a\",\"predictions\":[[0.5,0.5]]}\n"
                "{\"obs_id\":\"b\",\"predictions\":[[0.5,0.5],[0.5,0.5]]}\n",
                RecordFormat::Jsonl, &line) == RecordError::Kind::InconsistentShape);
  CHECK(line == 2);

  CHECK(kind_of("{\"obs_id\":\"a\",\"predictions\":[[0.5,0.5],[0.2,0.3,0.5]]}\n",
                RecordFormat::Jsonl) == RecordError::Kind::InconsistentShape);
  CHECK(kind_of("not json\n", RecordFormat::Jsonl) == RecordError::Kind::ParseError);
  CHECK(kind_of("{\"predictions\":[[0.5,0.5]]}\n", RecordFormat::Jsonl) ==
        RecordError::Kind::ParseError);
  CHECK(kind_of("{\"obs_id\":\"a\",\"label\":2,\"predictions\":[[0.5,0.5]]}\n",
                RecordFormat::Jsonl) == RecordError::Kind::ParseError);

  CHECK(kind_of("a,0,1,0.3,0.7\na,1,1,0.6,0.2\n", RecordFormat::Csv, &line) ==
        RecordError::Kind::InvalidDistribution);
  CHECK(line == 2);
  CHECK(kind_of("a,0,1,0.3,0.7\na,2,1,0.8,0.2\n", RecordFormat::Csv) ==
        RecordError::Kind::ParseError);
  CHECK(kind_of("a,0,1,0.3,x\n", RecordFormat::Csv) == RecordError::Kind::ParseError);
  CHECK(kind_of("a,0,1,0.3,0.7\nb,0,1,0.2,0.3,0.5\n", RecordFormat::Csv) ==
        RecordError::Kind::InconsistentShape);
}

TEST_CASE("written records parse back losslessly") {
  const auto recs = to_records(generate({50, 17, {ArtificialClassifier::F1, ArtificialClassifier::F4,
                                                  ArtificialClassifier::F5}}));
  for (auto format : {RecordFormat::Jsonl, RecordFormat::Csv}) {
    std::ostringstream out;
    if (format == RecordFormat::Jsonl) {
      write_jsonl(out, recs);
    } else {
      write_csv(out, recs);
    }
    std::istringstream in(out.str());
    const auto back = parse_records(in, format);
    REQUIRE(back.size() == recs.size());
    for (std::size_t n = 0; n < recs.size(); ++n) {
      CHECK(back[n].obs_id == recs[n].obs_id);
      CHECK(back[n].label == recs[n].label);
      for (std::size_t j = 0; j < recs[n].predictions.size(); ++j)
        for (std::size_t k = 0; k < 2; ++k)
          CHECK(back[n].predictions[j][k] == doctest::Approx(recs[n].predictions[j][k]).epsilon(1e-15));
    }
  }
}

TEST_CASE("format_real keeps 17 significant digits") {
  CHECK(format_real(0.1) == "0.10000000000000001");
  CHECK(std::stod(format_real(6.12081418276792e-16)) == 6.12081418276792e-16);
}
