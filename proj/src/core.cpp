#include "yayambo/core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace yayambo {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NegativeEntry: return "NegativeEntry";
    case ErrorCode::BadMass: return "BadMass";
    case ErrorCode::TooFewClasses: return "TooFewClasses";
    case ErrorCode::ZeroMass: return "ZeroMass";
    case ErrorCode::ZeroProductMass: return "ZeroProductMass";
    case ErrorCode::DegenerateUpdate: return "DegenerateUpdate";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::EmptyEnsemble: return "EmptyEnsemble";
    case ErrorCode::InvalidParams: return "InvalidParams";
    case ErrorCode::MissingLabels: return "MissingLabels";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

Distribution validate_distribution(std::span<const double> raw, double tolerance) {
  if (raw.size() < 2) {
    throw Error(ErrorCode::TooFewClasses,
                "need at least 2 classes, got " + std::to_string(raw.size()));
  }
  std::vector<double> probs(raw.begin(), raw.end());
  for (std::size_t k = 0; k < probs.size(); ++k) {
    const double p = probs[k];
    if (!std::isfinite(p) || p < -kNegativeSlack) {
      std::ostringstream msg;
      msg << "entry " << k << " is " << p;
      throw Error(ErrorCode::NegativeEntry, msg.str());
    }
    if (p < 0.0) probs[k] = 0.0;
  }
  const double mass = std::accumulate(probs.begin(), probs.end(), 0.0);
  if (!(std::abs(mass - 1.0) <= tolerance)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "entries sum to " << mass;
    throw Error(ErrorCode::BadMass, msg.str());
  }
  return normalize(std::move(probs));
}

Distribution normalize(std::vector<double> raw) {
  if (raw.size() < 2) {
    throw Error(ErrorCode::TooFewClasses,
                "need at least 2 classes, got " + std::to_string(raw.size()));
  }
  double total = 0.0;
  for (double v : raw) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw Error(ErrorCode::NegativeEntry, "normalize expects finite nonnegative entries");
    }
    total += v;
  }
  if (total <= 0.0) throw Error(ErrorCode::ZeroMass, "all entries are zero");
  for (double& v : raw) v /= total;
  return Distribution(std::move(raw));
}

Decision decide(std::span<const double> values) {
  // max_element returns the first maximum, which is the tie rule.
  const auto it = std::max_element(values.begin(), values.end());
  return Decision{static_cast<std::size_t>(it - values.begin())};
}

EnsembleSnapshot::EnsembleSnapshot(std::vector<Distribution> members)
    : members_(std::move(members)) {
  if (members_.empty()) throw Error(ErrorCode::EmptyEnsemble, "ensemble has no members");
  const std::size_t l = members_.front().size();
  for (std::size_t j = 1; j < members_.size(); ++j) {
    if (members_[j].size() != l) {
      throw Error(ErrorCode::DimensionMismatch,
                  "member " + std::to_string(j) + " has " +
                      std::to_string(members_[j].size()) + " classes, expected " +
                      std::to_string(l));
    }
  }
}

}  // namespace yayambo
