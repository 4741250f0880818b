#pragma once

// Probability vectors, ensembles and the shared decision rule.

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace yayambo {

enum class ErrorCode {
  NegativeEntry,
  BadMass,
  TooFewClasses,
  ZeroMass,
  ZeroProductMass,
  DegenerateUpdate,
  DimensionMismatch,
  EmptyEnsemble,
  InvalidParams,
  MissingLabels,
};

const char* to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline constexpr double kDefaultMassTolerance = 1e-6;
// Entries in (-kNegativeSlack, 0) are treated as serialization noise and clamped.
inline constexpr double kNegativeSlack = 1e-12;

/// A probability vector over l >= 2 classes. Entries are nonnegative and
/// sum to 1 up to rounding. Only obtainable through validate_distribution
/// or normalize, so every instance satisfies the invariants.
class Distribution {
 public:
  std::size_t size() const noexcept { return probs_.size(); }
  double operator[](std::size_t k) const { return probs_[k]; }
  std::span<const double> probs() const noexcept { return probs_; }
  auto begin() const noexcept { return probs_.begin(); }
  auto end() const noexcept { return probs_.end(); }

  friend bool operator==(const Distribution&, const Distribution&) = default;

 private:
  explicit Distribution(std::vector<double> probs) : probs_(std::move(probs)) {}
  friend Distribution normalize(std::vector<double> raw);

  std::vector<double> probs_;
};

/// Checks that raw is a probability vector within tolerance and returns it
/// renormalized to unit mass.
Distribution validate_distribution(std::span<const double> raw,
                                   double tolerance = kDefaultMassTolerance);

/// Divides nonnegative entries by their total. Throws ZeroMass when the
/// total is zero.
Distribution normalize(std::vector<double> raw);

struct Decision {
  std::size_t class_index = 0;
  friend bool operator==(const Decision&, const Decision&) = default;
};

/// Smallest index attaining the maximum.
Decision decide(std::span<const double> values);
inline Decision decide(const Distribution& fused) { return decide(fused.probs()); }

/// The m member distributions produced for one observation.
class EnsembleSnapshot {
 public:
  explicit EnsembleSnapshot(std::vector<Distribution> members);

  std::size_t size() const noexcept { return members_.size(); }
  std::size_t num_classes() const noexcept { return members_.front().size(); }
  const Distribution& operator[](std::size_t j) const { return members_[j]; }
  const std::vector<Distribution>& members() const noexcept { return members_; }
  auto begin() const noexcept { return members_.begin(); }
  auto end() const noexcept { return members_.end(); }

 private:
  std::vector<Distribution> members_;
};

}  // namespace yayambo
