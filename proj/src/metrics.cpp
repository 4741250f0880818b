#include "yayambo/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace yayambo {

LabeledPredictions::LabeledPredictions(std::vector<Distribution> outputs,
                                       std::vector<std::size_t> labels)
    : outputs_(std::move(outputs)), labels_(std::move(labels)) {
  if (outputs_.empty()) throw Error(ErrorCode::EmptyEnsemble, "no observations");
  if (outputs_.size() != labels_.size()) {
    throw Error(ErrorCode::DimensionMismatch, "outputs and labels differ in length");
  }
  const std::size_t l = outputs_.front().size();
  for (std::size_t n = 0; n < outputs_.size(); ++n) {
    if (outputs_[n].size() != l) {
      throw Error(ErrorCode::DimensionMismatch,
                  "observation " + std::to_string(n) + " has a different class count");
    }
    if (labels_[n] >= l) {
      throw Error(ErrorCode::DimensionMismatch,
                  "label " + std::to_string(labels_[n]) + " out of range");
    }
  }
}

double accuracy(const LabeledPredictions& preds) {
  std::size_t correct = 0;
  for (std::size_t n = 0; n < preds.size(); ++n) {
    if (decide(preds.outputs()[n]).class_index == preds.labels()[n]) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(preds.size());
}

double cross_entropy(const LabeledPredictions& preds, double floor) {
  if (!(floor > 0.0 && floor < 1.0)) {
    throw Error(ErrorCode::InvalidParams, "cross-entropy floor must lie in (0, 1)");
  }
  double total = 0.0;
  for (std::size_t n = 0; n < preds.size(); ++n) {
    const double p = preds.outputs()[n][preds.labels()[n]];
    total -= std::log(std::max(p, floor));
  }
  return total / static_cast<double>(preds.size());
}

namespace {

double safe_ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

PrfScores macro_prf(const LabeledPredictions& preds) {
  const std::size_t l = preds.num_classes();
  std::vector<std::size_t> tp(l, 0), predicted(l, 0), actual(l, 0);
  for (std::size_t n = 0; n < preds.size(); ++n) {
    const std::size_t guess = decide(preds.outputs()[n]).class_index;
    const std::size_t truth = preds.labels()[n];
    ++predicted[guess];
    ++actual[truth];
    if (guess == truth) ++tp[guess];
  }
  PrfScores out;
  for (std::size_t c = 0; c < l; ++c) {
    const double p = safe_ratio(tp[c], predicted[c]);
    const double r = safe_ratio(tp[c], actual[c]);
    out.precision += p;
    out.recall += r;
    out.f1 += (p + r) > 0.0 ? 2.0 * p * r / (p + r) : 0.0;
  }
  const auto denom = static_cast<double>(l);
  out.precision /= denom;
  out.recall /= denom;
  out.f1 /= denom;
  return out;
}

MetricsReport evaluate(const LabeledPredictions& preds, double floor) {
  const auto prf = macro_prf(preds);
  return MetricsReport{accuracy(preds), cross_entropy(preds, floor), prf.precision, prf.recall,
                       prf.f1};
}

namespace {

void check_aligned(const std::vector<Distribution>& a, const std::vector<Distribution>& b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::DimensionMismatch, "sequences differ in length");
  }
  for (std::size_t n = 0; n < a.size(); ++n) {
    if (a[n].size() != b[n].size()) {
      throw Error(ErrorCode::DimensionMismatch,
                  "observation " + std::to_string(n) + " differs in class count");
    }
  }
}

}  // namespace

double prediction_disagreement(const std::vector<Distribution>& a,
                               const std::vector<Distribution>& b) {
  check_aligned(a, b);
  double sq = 0.0;
  for (std::size_t n = 0; n < a.size(); ++n) {
    for (std::size_t k = 0; k < a[n].size(); ++k) {
      const double d = a[n][k] - b[n][k];
      sq += d * d;
    }
  }
  return std::sqrt(sq);
}

double decision_agreement(const std::vector<Distribution>& reference,
                          const std::vector<Distribution>& candidate) {
  check_aligned(reference, candidate);
  if (reference.empty()) throw Error(ErrorCode::EmptyEnsemble, "no observations");
  std::size_t same = 0;
  for (std::size_t n = 0; n < reference.size(); ++n) {
    if (decide(reference[n]) == decide(candidate[n])) ++same;
  }
  return static_cast<double>(same) / static_cast<double>(reference.size());
}

}  // namespace yayambo
