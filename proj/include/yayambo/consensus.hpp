#pragma once

// Iterative support-weighted consensus fusion.
//
// Each member distribution is repeatedly reweighted by the class supports
// it receives from every other member:
//
//   pi_i(t)[k]  ∝  pi_i(t-1)[k] * sum_{j != i} support(j -> i, k)
//   support(j -> i, k) = pi_j[k] / (1 + D(pi_i[k], pi_j[k]))
//   D(p, q) = p * |ln((p + eps0) / (q + eps0))|
//
// All supports of a step are computed from the previous state before any
// member changes. Iteration stops once the summed L2 movement of the
// members drops below m * epsilon, or after max_iter steps. The final
// members are combined with the sum rule.

#include <cstddef>
#include <optional>
#include <vector>

#include "yayambo/core.hpp"

namespace yayambo {

struct ConsensusParams {
  double epsilon = 1e-6;   // convergence threshold per member
  double epsilon0 = 1e-3;  // log smoothing
  std::size_t max_iter = 100;

  /// Throws InvalidParams unless epsilon, epsilon0 > 0 and max_iter >= 1.
  void validate() const;
};

struct ConsensusState {
  std::vector<Distribution> members;
  std::size_t iteration = 0;
  std::optional<double> last_difference;  // empty at iteration 0

  static ConsensusState initial(const EnsembleSnapshot& ensemble);
};

/// Dense m x m x l tensor of class supports; entry (j, i, k) is the support
/// member i receives from member j for class k. Diagonal entries are zero.
class SupportTensor {
 public:
  SupportTensor(std::size_t m, std::size_t l) : m_(m), l_(l), data_(m * m * l, 0.0) {}

  double operator()(std::size_t from, std::size_t to, std::size_t k) const {
    return data_[(from * m_ + to) * l_ + k];
  }
  double& operator()(std::size_t from, std::size_t to, std::size_t k) {
    return data_[(from * m_ + to) * l_ + k];
  }
  std::size_t members() const noexcept { return m_; }
  std::size_t classes() const noexcept { return l_; }

 private:
  std::size_t m_;
  std::size_t l_;
  std::vector<double> data_;
};

struct FusionOutcome {
  Distribution fused;
  Decision decision;
  std::size_t iterations = 0;
  bool converged = false;
  std::optional<double> final_difference;
  std::vector<ConsensusState> trajectory;  // states 0..iterations when requested
};

double dissimilarity(double p_ik, double p_jk, double epsilon0);

double class_support(const Distribution& pi_i, const Distribution& pi_j, std::size_t k,
                     double epsilon0);

SupportTensor support_tensor(const ConsensusState& state, double epsilon0);

/// Sum over members of the Euclidean distance between matching members.
double consensus_difference(const ConsensusState& prev, const ConsensusState& next);

/// One synchronous update. Requires at least two members; throws
/// DegenerateUpdate if a member loses all of its mass.
ConsensusState consensus_step(const ConsensusState& state, double epsilon0);

FusionOutcome fuse_consensus(const EnsembleSnapshot& ensemble,
                             const ConsensusParams& params = {},
                             bool keep_trajectory = false);

}  // namespace yayambo
