#include "yayambo/consensus.hpp"

#include <cmath>
#include <string>

#include "yayambo/baselines.hpp"

namespace yayambo {

void ConsensusParams::validate() const {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw Error(ErrorCode::InvalidParams, "epsilon must be positive");
  }
  if (!(epsilon0 > 0.0) || !std::isfinite(epsilon0)) {
    throw Error(ErrorCode::InvalidParams, "epsilon0 must be positive");
  }
  if (max_iter < 1) throw Error(ErrorCode::InvalidParams, "max_iter must be at least 1");
}

ConsensusState ConsensusState::initial(const EnsembleSnapshot& ensemble) {
  return ConsensusState{ensemble.members(), 0, std::nullopt};
}

double dissimilarity(double p_ik, double p_jk, double epsilon0) {
  if (p_ik == 0.0) return 0.0;
  return p_ik * std::abs(std::log((p_ik + epsilon0) / (p_jk + epsilon0)));
}

double class_support(const Distribution& pi_i, const Distribution& pi_j, std::size_t k,
                     double epsilon0) {
  return pi_j[k] / (1.0 + dissimilarity(pi_i[k], pi_j[k], epsilon0));
}

namespace {

void check_shape(const ConsensusState& state) {
  if (state.members.empty()) throw Error(ErrorCode::EmptyEnsemble, "state has no members");
  const std::size_t l = state.members.front().size();
  for (const auto& d : state.members) {
    if (d.size() != l) throw Error(ErrorCode::DimensionMismatch, "members differ in class count");
  }
}

}  // namespace

SupportTensor support_tensor(const ConsensusState& state, double epsilon0) {
  check_shape(state);
  const std::size_t m = state.members.size();
  const std::size_t l = state.members.front().size();
  SupportTensor out(m, l);
  for (std::size_t to = 0; to < m; ++to) {
    for (std::size_t from = 0; from < m; ++from) {
      if (from == to) continue;
      for (std::size_t k = 0; k < l; ++k) {
        out(from, to, k) = class_support(state.members[to], state.members[from], k, epsilon0);
      }
    }
  }
  return out;
}

double consensus_difference(const ConsensusState& prev, const ConsensusState& next) {
  if (prev.members.size() != next.members.size()) {
    throw Error(ErrorCode::DimensionMismatch, "states differ in member count");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < prev.members.size(); ++i) {
    const auto& a = prev.members[i];
    const auto& b = next.members[i];
    if (a.size() != b.size()) {
      throw Error(ErrorCode::DimensionMismatch, "member " + std::to_string(i) +
                                                    " differs in class count");
    }
    double sq = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
      const double diff = a[k] - b[k];
      sq += diff * diff;
    }
    total += std::sqrt(sq);
  }
  return total;
}

ConsensusState consensus_step(const ConsensusState& state, double epsilon0) {
  check_shape(state);
  const std::size_t m = state.members.size();
  if (m < 2) throw Error(ErrorCode::EmptyEnsemble, "a consensus step needs at least 2 members");
  const std::size_t l = state.members.front().size();

  ConsensusState next;
  next.members.reserve(m);
  next.iteration = state.iteration + 1;

  std::vector<double> updated(l);
  for (std::size_t i = 0; i < m; ++i) {
    const auto& pi_i = state.members[i];
    double mass = 0.0;
    for (std::size_t k = 0; k < l; ++k) {
      double received = 0.0;
      for (std::size_t j = 0; j < m; ++j) {
        if (j != i) received += class_support(pi_i, state.members[j], k, epsilon0);
      }
      updated[k] = pi_i[k] * received;
      mass += updated[k];
    }
    if (!(mass > 0.0)) {
      throw Error(ErrorCode::DegenerateUpdate,
                  "member " + std::to_string(i) + " received no support on any of its classes");
    }
    next.members.push_back(normalize(updated));
  }
  next.last_difference = consensus_difference(state, next);
  return next;
}

FusionOutcome fuse_consensus(const EnsembleSnapshot& ensemble, const ConsensusParams& params,
                             bool keep_trajectory) {
  params.validate();
  auto state = ConsensusState::initial(ensemble);

  std::vector<ConsensusState> trajectory;
  if (keep_trajectory) trajectory.push_back(state);

  if (ensemble.size() == 1) {
    const auto& only = ensemble[0];
    return FusionOutcome{only, decide(only), 0, true, std::nullopt, std::move(trajectory)};
  }

  const double threshold = static_cast<double>(ensemble.size()) * params.epsilon;
  bool converged = false;
  while (state.iteration < params.max_iter) {
    state = consensus_step(state, params.epsilon0);
    if (keep_trajectory) trajectory.push_back(state);
    if (*state.last_difference < threshold) {
      converged = true;
      break;
    }
  }

  auto fused = fuse_sum(EnsembleSnapshot(state.members));
  const auto decision = decide(fused);
  return FusionOutcome{std::move(fused), decision, state.iteration, converged,
                       state.last_difference, std::move(trajectory)};
}

}  // namespace yayambo
