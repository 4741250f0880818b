#pragma once

// Prediction files: one record per observation holding the m x l matrix of
// classifier outputs and an optional label.
//
// JSONL (canonical), one object per line:
//   {"obs_id":"a","label":1,"predictions":[[0.3,0.7],[0.8,0.2]]}
// CSV, one row per classifier per observation, label empty when absent:
//   obs_id,classifier_idx,label,p0,...,p{l-1}

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "yayambo/core.hpp"
#include "yayambo/synth.hpp"

namespace yayambo {

enum class RecordFormat { Jsonl, Csv };

std::optional<RecordFormat> parse_format(std::string_view name);

struct PredictionRecord {
  std::string obs_id;
  std::optional<std::size_t> label;
  EnsembleSnapshot predictions;
  std::size_t line = 0;  // 1-based source line of the record's first row
};

class RecordError : public std::runtime_error {
 public:
  enum class Kind { ParseError, InconsistentShape, InvalidDistribution, Io };

  RecordError(Kind kind, std::size_t line, std::optional<std::size_t> row,
              const std::string& reason);

  Kind kind() const noexcept { return kind_; }
  std::size_t line() const noexcept { return line_; }
  std::optional<std::size_t> row() const noexcept { return row_; }

 private:
  Kind kind_;
  std::size_t line_;
  std::optional<std::size_t> row_;
};

std::vector<PredictionRecord> parse_jsonl(std::istream& in);
std::vector<PredictionRecord> parse_csv(std::istream& in);
std::vector<PredictionRecord> parse_records(std::istream& in, RecordFormat format);

/// Reads from a file, or from stdin when path is "-".
std::vector<PredictionRecord> parse_predictions(const std::string& path, RecordFormat format);

void write_jsonl(std::ostream& out, const std::vector<PredictionRecord>& records);
void write_csv(std::ostream& out, const std::vector<PredictionRecord>& records);

/// One record per synthetic observation, classifiers in spec order.
std::vector<PredictionRecord> to_records(const SyntheticDataset& dataset);

/// 17 significant digits, enough to round-trip any double.
std::string format_real(double value);

}  // namespace yayambo
