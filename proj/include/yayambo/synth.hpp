#pragma once

// Seeded generator for the five artificial binary classifiers F1..F5.
//
//   F1  0.51 on the true class
//   F2  0.90 on the true class
//   F3  0.49 on the true class (always wrong)
//   F4  0.70 on the true class with probability 0.65, otherwise a uniform
//       first-class probability
//   F5  uniform first-class probability
//
// Random stream: std::mt19937_64 seeded with the spec seed. A uniform draw
// is (next() >> 11) * 2^-53, redrawn while it equals 0, so it lies in (0, 1).
// Draws are consumed observation by observation (labels in order); within
// an observation F4 takes its branch draw, then its uniform draw if the
// branch is not confident, then F5 takes one draw. Classifiers that were
// not requested consume nothing. This order is part of the file contract:
// the same spec always yields the same bytes.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "yayambo/core.hpp"

namespace yayambo {

enum class ArtificialClassifier { F1, F2, F3, F4, F5 };

std::string_view classifier_name(ArtificialClassifier c);
std::optional<ArtificialClassifier> parse_classifier(std::string_view name);

struct ArtificialEnsembleSpec {
  std::size_t n_per_class = 5000;
  std::uint64_t seed = 0;
  std::vector<ArtificialClassifier> classifiers;

  void validate() const;
};

struct SyntheticDataset {
  std::vector<std::size_t> labels;               // n_per_class zeros, then n_per_class ones
  std::vector<std::vector<Distribution>> outputs;  // one column per requested classifier

  std::size_t size() const noexcept { return labels.size(); }
};

SyntheticDataset generate(const ArtificialEnsembleSpec& spec);

}  // namespace yayambo
