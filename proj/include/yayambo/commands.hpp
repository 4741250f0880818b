#pragma once

// The batch operations behind the command-line tool. Each command works on
// parsed records and writes to caller-supplied streams so it can be driven
// in-process.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "yayambo/consensus.hpp"
#include "yayambo/metrics.hpp"
#include "yayambo/records.hpp"
#include "yayambo/rules.hpp"
#include "yayambo/synth.hpp"

namespace yayambo {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRecordFailure = 1;
inline constexpr int kExitUsage = 2;

struct RunConfig {
  std::vector<Rule> rules{kAllRules.begin(), kAllRules.end()};
  ConsensusParams params;
  bool trace = false;
  std::optional<std::uint64_t> seed;
  double floor = kDefaultCrossEntropyFloor;

  void validate() const;
};

/// "all" expands to every rule; otherwise a single rule name.
std::optional<std::vector<Rule>> parse_rule_selection(std::string_view name);

/// Writes one JSON line per (record, rule) in input order. A record that
/// fails under a rule gets an "error" line and does not affect the others.
/// Returns kExitRecordFailure if anything failed, kExitOk otherwise.
int cmd_fuse(const std::vector<PredictionRecord>& records, const RunConfig& config,
             std::ostream& out, std::ostream& diag);

struct EvalRow {
  std::string name;
  bool is_rule = false;
  MetricsReport metrics;
  std::size_t evaluated = 0;  // records that produced an output
  std::size_t failures = 0;
};

struct EvalReport {
  std::size_t observations = 0;
  std::vector<EvalRow> rows;  // classifiers first, then rules

  bool any_failures() const;
};

/// Throws Error(MissingLabels) if any record is unlabeled. Records on which
/// a rule fails are excluded from that rule's metrics and counted.
EvalReport cmd_eval(const std::vector<PredictionRecord>& records, const RunConfig& config,
                    std::ostream& diag);

std::string eval_to_json(const EvalReport& report);
std::string eval_to_text(const EvalReport& report);

struct PairwiseReport {
  std::size_t classifiers = 0;
  // Both matrices are m x m; only entries with row <= column are meaningful.
  std::vector<std::vector<double>> prediction_disagreement;
  std::vector<std::vector<double>> decision_agreement;
};

PairwiseReport cmd_pairwise(const std::vector<PredictionRecord>& records);

std::string pairwise_to_json(const PairwiseReport& report);
std::string pairwise_to_text(const PairwiseReport& report);

void cmd_synth(const ArtificialEnsembleSpec& spec, RecordFormat format, std::ostream& out);

std::string classifier_label(std::size_t index);

}  // namespace yayambo
