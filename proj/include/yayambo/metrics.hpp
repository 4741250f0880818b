#pragma once

// Evaluation metrics for classifier and fusion outputs.

#include <cstddef>
#include <vector>

#include "yayambo/core.hpp"

namespace yayambo {

inline constexpr double kDefaultCrossEntropyFloor = 1e-15;

/// n outputs of one classifier (or fusion rule) with their true labels.
class LabeledPredictions {
 public:
  LabeledPredictions(std::vector<Distribution> outputs, std::vector<std::size_t> labels);

  std::size_t size() const noexcept { return outputs_.size(); }
  std::size_t num_classes() const noexcept { return outputs_.front().size(); }
  const std::vector<Distribution>& outputs() const noexcept { return outputs_; }
  const std::vector<std::size_t>& labels() const noexcept { return labels_; }

 private:
  std::vector<Distribution> outputs_;
  std::vector<std::size_t> labels_;
};

struct PrfScores {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

struct MetricsReport {
  double accuracy = 0.0;
  double cross_entropy = 0.0;  // nats
  double macro_precision = 0.0;
  double macro_recall = 0.0;
  double macro_f1 = 0.0;
};

double accuracy(const LabeledPredictions& preds);

/// Mean of -ln(max(p_true, floor)).
double cross_entropy(const LabeledPredictions& preds, double floor = kDefaultCrossEntropyFloor);

/// Unweighted means over classes; 0/0 counts as 0.
PrfScores macro_prf(const LabeledPredictions& preds);

MetricsReport evaluate(const LabeledPredictions& preds,
                       double floor = kDefaultCrossEntropyFloor);

/// Frobenius distance between the stacked n x l output matrices.
double prediction_disagreement(const std::vector<Distribution>& a,
                               const std::vector<Distribution>& b);

/// Fraction of observations where both sides make the same decision.
double decision_agreement(const std::vector<Distribution>& reference,
                          const std::vector<Distribution>& candidate);

}  // namespace yayambo
