#pragma once

// Fusion rules that treat every classifier as equally credible.

#include <cstddef>
#include <vector>

#include "yayambo/core.hpp"

namespace yayambo {

/// Raw majority-vote output. Entry k is the fraction of members whose
/// maximum set contains k, so the entries can sum above 1 when members
/// have tied maxima.
struct VoteVector {
  std::vector<double> votes;
};

/// Borda points of one member: a permutation of {1, ..., l}.
struct BordaPoints {
  std::vector<std::size_t> points;
};

struct MajorityResult {
  VoteVector votes;
  Distribution fused;  // votes renormalized to unit mass
};

/// Componentwise arithmetic mean.
Distribution fuse_sum(const EnsembleSnapshot& ensemble);

/// Normalized componentwise product, accumulated in log space. Throws
/// ZeroProductMass when every class is zeroed by some member.
Distribution fuse_product(const EnsembleSnapshot& ensemble);

std::vector<double> majority_indicator(const Distribution& d);
MajorityResult fuse_majority(const EnsembleSnapshot& ensemble);

/// Class k earns l minus the number of classes ranked above it; equal
/// probabilities rank the smaller index higher.
BordaPoints borda_points(const Distribution& d);
Distribution fuse_borda(const EnsembleSnapshot& ensemble);

}  // namespace yayambo
