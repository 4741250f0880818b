#include "yayambo/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace yayambo {

Distribution fuse_sum(const EnsembleSnapshot& ensemble) {
  std::vector<double> acc(ensemble.num_classes(), 0.0);
  for (const auto& d : ensemble) {
    for (std::size_t k = 0; k < acc.size(); ++k) acc[k] += d[k];
  }
  const auto m = static_cast<double>(ensemble.size());
  for (double& v : acc) v /= m;
  return normalize(std::move(acc));
}

Distribution fuse_product(const EnsembleSnapshot& ensemble) {
  constexpr double kNegInf = -std::numeric_limits<double>::infinity();
  std::vector<double> log_mass(ensemble.num_classes(), 0.0);
  for (const auto& d : ensemble) {
    for (std::size_t k = 0; k < log_mass.size(); ++k) {
      log_mass[k] += d[k] > 0.0 ? std::log(d[k]) : kNegInf;
    }
  }
  const double peak = *std::max_element(log_mass.begin(), log_mass.end());
  if (peak == kNegInf) {
    throw Error(ErrorCode::ZeroProductMass, "every class is zeroed by at least one member");
  }
  for (double& v : log_mass) v = std::exp(v - peak);  // exp(-inf) == 0
  return normalize(std::move(log_mass));
}

std::vector<double> majority_indicator(const Distribution& d) {
  const double top = *std::max_element(d.begin(), d.end());
  std::vector<double> out(d.size());
  for (std::size_t k = 0; k < d.size(); ++k) out[k] = d[k] == top ? 1.0 : 0.0;
  return out;
}

MajorityResult fuse_majority(const EnsembleSnapshot& ensemble) {
  std::vector<double> votes(ensemble.num_classes(), 0.0);
  for (const auto& d : ensemble) {
    const auto ind = majority_indicator(d);
    for (std::size_t k = 0; k < votes.size(); ++k) votes[k] += ind[k];
  }
  const auto m = static_cast<double>(ensemble.size());
  for (double& v : votes) v /= m;
  auto fused = normalize(votes);
  return MajorityResult{VoteVector{std::move(votes)}, std::move(fused)};
}

BordaPoints borda_points(const Distribution& d) {
  const std::size_t l = d.size();
  BordaPoints out{std::vector<std::size_t>(l)};
  for (std::size_t k = 0; k < l; ++k) {
    std::size_t above = 0;
    for (std::size_t i = 0; i < l; ++i) {
      if (d[i] > d[k] || (d[i] == d[k] && i < k)) ++above;
    }
    out.points[k] = l - above;
  }
  return out;
}

Distribution fuse_borda(const EnsembleSnapshot& ensemble) {
  const std::size_t l = ensemble.num_classes();
  std::vector<std::size_t> total(l, 0);
  for (const auto& d : ensemble) {
    const auto pts = borda_points(d);
    for (std::size_t k = 0; k < l; ++k) total[k] += pts.points[k];
  }
  // One division of exact integers, so duplicated members give identical bits.
  const auto denom = static_cast<double>(ensemble.size() * l * (l + 1) / 2);
  std::vector<double> fused(l);
  for (std::size_t k = 0; k < l; ++k) fused[k] = static_cast<double>(total[k]) / denom;
  return normalize(std::move(fused));
}

}  // namespace yayambo
