#include "yayambo/commands.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace yayambo {

void RunConfig::validate() const {
  if (rules.empty()) throw Error(ErrorCode::InvalidParams, "no fusion rule selected");
  params.validate();
  if (!(floor > 0.0 && floor < 1.0)) {
    throw Error(ErrorCode::InvalidParams, "floor must lie in (0, 1)");
  }
}

std::optional<std::vector<Rule>> parse_rule_selection(std::string_view name) {
  if (name == "all") return std::vector<Rule>(kAllRules.begin(), kAllRules.end());
  if (auto r = parse_rule(name)) return std::vector<Rule>{*r};
  return std::nullopt;
}

std::string classifier_label(std::size_t index) { return "classifier_" + std::to_string(index); }

namespace {

void write_vector(std::ostream& out, std::span<const double> v) {
  out << '[';
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (k) out << ',';
    out << format_real(v[k]);
  }
  out << ']';
}

void write_trajectory(std::ostream& out, const std::vector<ConsensusState>& trajectory) {
  out << '[';
  for (std::size_t t = 0; t < trajectory.size(); ++t) {
    const auto& state = trajectory[t];
    if (t) out << ',';
    out << "{\"iteration\":" << state.iteration << ",\"distributions\":[";
    for (std::size_t i = 0; i < state.members.size(); ++i) {
      if (i) out << ',';
      write_vector(out, state.members[i].probs());
    }
    out << "],\"fused\":";
    write_vector(out, fuse_sum(EnsembleSnapshot(state.members)).probs());
    out << ",\"difference\":";
    if (state.last_difference) {
      out << format_real(*state.last_difference);
    } else {
      out << "null";
    }
    out << '}';
  }
  out << ']';
}

std::string quoted(std::string_view s) { return nlohmann::json(std::string(s)).dump(); }

}  // namespace

int cmd_fuse(const std::vector<PredictionRecord>& records, const RunConfig& config,
             std::ostream& out, std::ostream& diag) {
  config.validate();
  bool failed = false;
  for (const auto& rec : records) {
    for (Rule rule : config.rules) {
      out << "{\"obs_id\":" << quoted(rec.obs_id) << ",\"rule\":" << quoted(rule_name(rule));
      try {
        const auto result = fuse_with(rule, rec.predictions, config.params, config.trace);
        out << ",\"fused\":";
        write_vector(out, result.fused.probs());
        out << ",\"decision\":" << result.decision.class_index;
        if (result.votes) {
          out << ",\"votes\":";
          write_vector(out, result.votes->votes);
        }
        if (result.consensus) {
          out << ",\"iterations\":" << result.consensus->iterations
              << ",\"converged\":" << (result.consensus->converged ? "true" : "false");
          if (config.trace) {
            out << ",\"trajectory\":";
            write_trajectory(out, result.consensus->trajectory);
          }
        }
      } catch (const Error& e) {
        failed = true;
        out << ",\"error\":" << quoted(e.what());
        diag << "record '" << rec.obs_id << "' (line " << rec.line << "), rule "
             << rule_name(rule) << ": " << e.what() << '\n';
      }
      out << "}\n";
    }
  }
  return failed ? kExitRecordFailure : kExitOk;
}

bool EvalReport::any_failures() const {
  return std::any_of(rows.begin(), rows.end(), [](const EvalRow& r) { return r.failures > 0; });
}

EvalReport cmd_eval(const std::vector<PredictionRecord>& records, const RunConfig& config,
                    std::ostream& diag) {
  config.validate();
  if (records.empty()) throw Error(ErrorCode::EmptyEnsemble, "no records to evaluate");
  std::vector<std::size_t> labels;
  labels.reserve(records.size());
  for (const auto& rec : records) {
    if (!rec.label) {
      throw Error(ErrorCode::MissingLabels,
                  "record '" + rec.obs_id + "' (line " + std::to_string(rec.line) +
                      ") has no label");
    }
    labels.push_back(*rec.label);
  }

  EvalReport report;
  report.observations = records.size();

  const std::size_t m = records.front().predictions.size();
  for (std::size_t j = 0; j < m; ++j) {
    std::vector<Distribution> column;
    column.reserve(records.size());
    for (const auto& rec : records) column.push_back(rec.predictions[j]);
    const LabeledPredictions preds(std::move(column), labels);
    report.rows.push_back(
        EvalRow{classifier_label(j), false, evaluate(preds, config.floor), records.size(), 0});
  }

  for (Rule rule : config.rules) {
    std::vector<Distribution> fused;
    std::vector<std::size_t> kept_labels;
    std::size_t failures = 0;
    for (const auto& rec : records) {
      try {
        fused.push_back(fuse_with(rule, rec.predictions, config.params).fused);
        kept_labels.push_back(*rec.label);
      } catch (const Error& e) {
        ++failures;
        diag << "record '" << rec.obs_id << "', rule " << rule_name(rule) << ": " << e.what()
             << '\n';
      }
    }
    EvalRow row{std::string(rule_name(rule)), true, {}, fused.size(), failures};
    if (!fused.empty()) {
      row.metrics = evaluate(LabeledPredictions(std::move(fused), std::move(kept_labels)),
                             config.floor);
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

std::string eval_to_json(const EvalReport& report) {
  std::ostringstream out;
  out << "{\"observations\":" << report.observations << ",\"rows\":[";
  for (std::size_t r = 0; r < report.rows.size(); ++r) {
    const auto& row = report.rows[r];
    if (r) out << ',';
    out << "{\"name\":" << quoted(row.name) << ",\"kind\":\""
        << (row.is_rule ? "rule" : "classifier") << "\",\"evaluated\":" << row.evaluated
        << ",\"failures\":" << row.failures;
    if (row.evaluated > 0) {
      out << ",\"accuracy\":" << format_real(row.metrics.accuracy)
          << ",\"cross_entropy\":" << format_real(row.metrics.cross_entropy)
          << ",\"precision\":" << format_real(row.metrics.macro_precision)
          << ",\"recall\":" << format_real(row.metrics.macro_recall)
          << ",\"f1\":" << format_real(row.metrics.macro_f1);
    }
    out << '}';
  }
  out << "]}\n";
  return out.str();
}

namespace {

std::string fixed4(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

std::string pad(std::string s, std::size_t width) {
  if (s.size() < width) s.insert(0, width - s.size(), ' ');
  return s;
}

}  // namespace

std::string eval_to_text(const EvalReport& report) {
  std::size_t name_width = 9;
  for (const auto& row : report.rows) name_width = std::max(name_width, row.name.size());

  std::ostringstream out;
  out << std::string(name_width, ' ') << pad("accuracy", 10) << pad("x-entropy", 11)
      << pad("precision", 11) << pad("recall", 9) << pad("f1", 9) << '\n';
  for (const auto& row : report.rows) {
    std::string name = row.name;
    name.resize(name_width, ' ');
    out << name;
    if (row.evaluated == 0) {
      out << pad("-", 10) << pad("-", 11) << pad("-", 11) << pad("-", 9) << pad("-", 9);
    } else {
      out << pad(fixed4(row.metrics.accuracy), 10) << pad(fixed4(row.metrics.cross_entropy), 11)
          << pad(fixed4(row.metrics.macro_precision), 11) << pad(fixed4(row.metrics.macro_recall), 9)
          << pad(fixed4(row.metrics.macro_f1), 9);
    }
    if (row.failures > 0) out << "  (" << row.failures << " failed)";
    out << '\n';
  }
  out << "observations: " << report.observations << '\n';
  return out.str();
}

PairwiseReport cmd_pairwise(const std::vector<PredictionRecord>& records) {
  if (records.empty()) throw Error(ErrorCode::EmptyEnsemble, "no records");
  const std::size_t m = records.front().predictions.size();
  std::vector<std::vector<Distribution>> columns(m);
  for (auto& c : columns) c.reserve(records.size());
  for (const auto& rec : records) {
    for (std::size_t j = 0; j < m; ++j) columns[j].push_back(rec.predictions[j]);
  }

  PairwiseReport report;
  report.classifiers = m;
  report.prediction_disagreement.assign(m, std::vector<double>(m, 0.0));
  report.decision_agreement.assign(m, std::vector<double>(m, 1.0));
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = a + 1; b < m; ++b) {
      const double dis = prediction_disagreement(columns[a], columns[b]);
      const double agr = decision_agreement(columns[a], columns[b]);
      report.prediction_disagreement[a][b] = report.prediction_disagreement[b][a] = dis;
      report.decision_agreement[a][b] = report.decision_agreement[b][a] = agr;
    }
  }
  return report;
}

namespace {

void write_upper(std::ostream& out, const std::vector<std::vector<double>>& matrix) {
  out << '[';
  for (std::size_t a = 0; a < matrix.size(); ++a) {
    if (a) out << ',';
    out << '[';
    for (std::size_t b = 0; b < matrix.size(); ++b) {
      if (b) out << ',';
      if (b < a) {
        out << "null";
      } else {
        out << format_real(matrix[a][b]);
      }
    }
    out << ']';
  }
  out << ']';
}

void text_upper(std::ostream& out, const std::string& title,
                const std::vector<std::vector<double>>& matrix) {
  const std::size_t m = matrix.size();
  out << title << '\n';
  constexpr std::size_t kWidth = 14;
  out << std::string(kWidth, ' ');
  for (std::size_t b = 1; b < m; ++b) out << pad(classifier_label(b), kWidth);
  out << '\n';
  for (std::size_t a = 0; a + 1 < m; ++a) {
    std::string name = classifier_label(a);
    name.resize(kWidth, ' ');
    out << name;
    for (std::size_t b = 1; b < m; ++b) {
      out << pad(b > a ? fixed4(matrix[a][b]) : std::string("-"), kWidth);
    }
    out << '\n';
  }
}

}  // namespace

std::string pairwise_to_json(const PairwiseReport& report) {
  std::ostringstream out;
  out << "{\"classifiers\":" << report.classifiers << ",\"prediction_disagreement\":";
  write_upper(out, report.prediction_disagreement);
  out << ",\"decision_agreement\":";
  write_upper(out, report.decision_agreement);
  out << "}\n";
  return out.str();
}

std::string pairwise_to_text(const PairwiseReport& report) {
  std::ostringstream out;
  text_upper(out, "prediction disagreement (euclidean distance)", report.prediction_disagreement);
  out << '\n';
  text_upper(out, "decision agreement (fraction of equal decisions)", report.decision_agreement);
  return out.str();
}

void cmd_synth(const ArtificialEnsembleSpec& spec, RecordFormat format, std::ostream& out) {
  const auto records = to_records(generate(spec));
  if (format == RecordFormat::Jsonl) {
    write_jsonl(out, records);
  } else {
    write_csv(out, records);
  }
}

}  // namespace yayambo
