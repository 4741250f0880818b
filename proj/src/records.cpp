#include "yayambo/records.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

namespace yayambo {

using nlohmann::json;

std::optional<RecordFormat> parse_format(std::string_view name) {
  if (name == "jsonl") return RecordFormat::Jsonl;
  if (name == "csv") return RecordFormat::Csv;
  return std::nullopt;
}

namespace {

const char* kind_name(RecordError::Kind kind) {
  switch (kind) {
    case RecordError::Kind::ParseError: return "ParseError";
    case RecordError::Kind::InconsistentShape: return "InconsistentShape";
    case RecordError::Kind::InvalidDistribution: return "InvalidDistribution";
    case RecordError::Kind::Io: return "IoError";
  }
  return "Error";
}

std::string describe(RecordError::Kind kind, std::size_t line, std::optional<std::size_t> row,
                     const std::string& reason) {
  std::ostringstream msg;
  msg << kind_name(kind) << " at line " << line;
  if (row) msg << ", row " << *row;
  msg << ": " << reason;
  return msg.str();
}

// Tracks the (m, l) shape fixed by the first record.
class ShapeGuard {
 public:
  void check(const EnsembleSnapshot& e, std::size_t line) {
    if (!m_) {
      m_ = e.size();
      l_ = e.num_classes();
      return;
    }
    if (e.size() != *m_ || e.num_classes() != *l_) {
      std::ostringstream msg;
      msg << "record has " << e.size() << "x" << e.num_classes() << " predictions, expected "
          << *m_ << "x" << *l_;
      throw RecordError(RecordError::Kind::InconsistentShape, line, std::nullopt, msg.str());
    }
  }

 private:
  std::optional<std::size_t> m_, l_;
};

Distribution checked_row(const std::vector<double>& raw, std::size_t line, std::size_t row) {
  try {
    return validate_distribution(raw);
  } catch (const Error& e) {
    throw RecordError(RecordError::Kind::InvalidDistribution, line, row, e.what());
  }
}

EnsembleSnapshot checked_ensemble(std::vector<Distribution> rows, std::size_t line) {
  try {
    return EnsembleSnapshot(std::move(rows));
  } catch (const Error& e) {
    throw RecordError(RecordError::Kind::InconsistentShape, line, std::nullopt, e.what());
  }
}

bool is_blank(std::string_view s) {
  return s.find_first_not_of(" \t\r") == std::string_view::npos;
}

}  // namespace

RecordError::RecordError(Kind kind, std::size_t line, std::optional<std::size_t> row,
                         const std::string& reason)
    : std::runtime_error(describe(kind, line, row, reason)), kind_(kind), line_(line), row_(row) {}

std::vector<PredictionRecord> parse_jsonl(std::istream& in) {
  std::vector<PredictionRecord> records;
  ShapeGuard shape;
  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (is_blank(text)) continue;
    const auto parse_error = [line](const std::string& why) {
      return RecordError(RecordError::Kind::ParseError, line, std::nullopt, why);
    };

    json obj;
    try {
      obj = json::parse(text);
    } catch (const json::parse_error& e) {
      throw parse_error(e.what());
    }
    if (!obj.is_object()) throw parse_error("expected a JSON object");

    std::string obs_id;
    if (auto it = obj.find("obs_id"); it != obj.end()) {
      if (it->is_string()) {
        obs_id = it->get<std::string>();
      } else if (it->is_number_integer()) {
        obs_id = it->dump();
      } else {
        throw parse_error("obs_id must be a string");
      }
    } else {
      throw parse_error("missing obs_id");
    }

    std::optional<std::size_t> label;
    if (auto it = obj.find("label"); it != obj.end() && !it->is_null()) {
      if (!it->is_number_integer() || it->get<long long>() < 0) {
        throw parse_error("label must be a nonnegative integer");
      }
      label = it->get<std::size_t>();
    }

    auto preds = obj.find("predictions");
    if (preds == obj.end() || !preds->is_array() || preds->empty()) {
      throw parse_error("predictions must be a nonempty array of arrays");
    }
    std::vector<Distribution> rows;
    rows.reserve(preds->size());
    for (std::size_t r = 0; r < preds->size(); ++r) {
      const auto& row = (*preds)[r];
      if (!row.is_array()) throw parse_error("prediction row " + std::to_string(r) + " is not an array");
      std::vector<double> raw;
      raw.reserve(row.size());
      for (const auto& v : row) {
        if (!v.is_number()) throw parse_error("prediction row " + std::to_string(r) + " has a non-number");
        raw.push_back(v.get<double>());
      }
      rows.push_back(checked_row(raw, line, r));
    }
    auto ensemble = checked_ensemble(std::move(rows), line);
    shape.check(ensemble, line);
    if (label && *label >= ensemble.num_classes()) throw parse_error("label out of range");
    records.push_back(PredictionRecord{std::move(obs_id), label, std::move(ensemble), line});
  }
  if (in.bad()) throw RecordError(RecordError::Kind::Io, line, std::nullopt, "read failure");
  return records;
}

namespace {

std::vector<std::string_view> split_commas(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(',', start);
    out.push_back(s.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  for (auto& f : out) {
    while (!f.empty() && (f.front() == ' ' || f.front() == '\t')) f.remove_prefix(1);
    while (!f.empty() && (f.back() == ' ' || f.back() == '\t' || f.back() == '\r')) f.remove_suffix(1);
  }
  return out;
}

template <typename T>
std::optional<T> parse_number(std::string_view s) {
  T value{};
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, value);
  if (ec != std::errc{} || ptr != end) return std::nullopt;
  return value;
}

struct PendingRecord {
  std::string obs_id;
  std::optional<std::size_t> label;
  std::vector<Distribution> rows;
  std::size_t line = 0;
};

}  // namespace

std::vector<PredictionRecord> parse_csv(std::istream& in) {
  std::vector<PredictionRecord> records;
  ShapeGuard shape;
  std::optional<PendingRecord> pending;

  const auto flush = [&] {
    if (!pending) return;
    auto ensemble = checked_ensemble(std::move(pending->rows), pending->line);
    shape.check(ensemble, pending->line);
    if (pending->label && *pending->label >= ensemble.num_classes()) {
      throw RecordError(RecordError::Kind::ParseError, pending->line, std::nullopt,
                        "label out of range");
    }
    records.push_back(PredictionRecord{std::move(pending->obs_id), pending->label,
                                       std::move(ensemble), pending->line});
    pending.reset();
  };

  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (is_blank(text)) continue;
    const auto fields = split_commas(text);
    if (line == 1 && fields.front() == "obs_id") continue;
    const auto parse_error = [line](const std::string& why) {
      return RecordError(RecordError::Kind::ParseError, line, std::nullopt, why);
    };
    if (fields.size() < 5) throw parse_error("expected obs_id,classifier_idx,label,p0,p1,...");

    const std::string obs_id(fields[0]);
    const auto idx = parse_number<std::size_t>(fields[1]);
    if (!idx) throw parse_error("bad classifier_idx '" + std::string(fields[1]) + "'");
    std::optional<std::size_t> label;
    if (!fields[2].empty()) {
      label = parse_number<std::size_t>(fields[2]);
      if (!label) throw parse_error("bad label '" + std::string(fields[2]) + "'");
    }
    std::vector<double> raw;
    for (std::size_t f = 3; f < fields.size(); ++f) {
      const auto v = parse_number<double>(fields[f]);
      if (!v) throw parse_error("bad probability '" + std::string(fields[f]) + "'");
      raw.push_back(*v);
    }

    if (pending && pending->obs_id != obs_id) flush();
    if (!pending) pending = PendingRecord{obs_id, label, {}, line};
    if (*idx != pending->rows.size()) {
      throw parse_error("classifier_idx " + std::to_string(*idx) + " out of order, expected " +
                        std::to_string(pending->rows.size()));
    }
    if (label != pending->label) throw parse_error("label differs between rows of one observation");
    pending->rows.push_back(checked_row(raw, line, *idx));
  }
  if (in.bad()) throw RecordError(RecordError::Kind::Io, line, std::nullopt, "read failure");
  flush();
  return records;
}

std::vector<PredictionRecord> parse_records(std::istream& in, RecordFormat format) {
  return format == RecordFormat::Jsonl ? parse_jsonl(in) : parse_csv(in);
}

std::vector<PredictionRecord> parse_predictions(const std::string& path, RecordFormat format) {
  if (path == "-") return parse_records(std::cin, format);
  std::ifstream file(path);
  if (!file) throw RecordError(RecordError::Kind::Io, 0, std::nullopt, "cannot open " + path);
  return parse_records(file, format);
}

std::string format_real(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

void write_jsonl(std::ostream& out, const std::vector<PredictionRecord>& records) {
  for (const auto& rec : records) {
    out << "{\"obs_id\":" << json(rec.obs_id).dump();
    if (rec.label) out << ",\"label\":" << *rec.label;
    out << ",\"predictions\":[";
    for (std::size_t j = 0; j < rec.predictions.size(); ++j) {
      if (j) out << ',';
      out << '[';
      const auto& d = rec.predictions[j];
      for (std::size_t k = 0; k < d.size(); ++k) {
        if (k) out << ',';
        out << format_real(d[k]);
      }
      out << ']';
    }
    out << "]}\n";
  }
}

void write_csv(std::ostream& out, const std::vector<PredictionRecord>& records) {
  const std::size_t l = records.empty() ? 2 : records.front().predictions.num_classes();
  out << "obs_id,classifier_idx,label";
  for (std::size_t k = 0; k < l; ++k) out << ",p" << k;
  out << '\n';
  for (const auto& rec : records) {
    for (std::size_t j = 0; j < rec.predictions.size(); ++j) {
      out << rec.obs_id << ',' << j << ',';
      if (rec.label) out << *rec.label;
      for (double p : rec.predictions[j]) out << ',' << format_real(p);
      out << '\n';
    }
  }
}

std::vector<PredictionRecord> to_records(const SyntheticDataset& dataset) {
  std::vector<PredictionRecord> records;
  records.reserve(dataset.size());
  for (std::size_t n = 0; n < dataset.size(); ++n) {
    std::vector<Distribution> rows;
    rows.reserve(dataset.outputs.size());
    for (const auto& column : dataset.outputs) rows.push_back(column[n]);
    records.push_back(PredictionRecord{std::to_string(n), dataset.labels[n],
                                       EnsembleSnapshot(std::move(rows)), n + 1});
  }
  return records;
}

}  // namespace yayambo
