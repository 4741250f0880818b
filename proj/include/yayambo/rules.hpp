#pragma once

// Uniform entry point over the five fusion rules.

#include <array>
#include <optional>
#include <string_view>

#include "yayambo/baselines.hpp"
#include "yayambo/consensus.hpp"
#include "yayambo/core.hpp"

namespace yayambo {

enum class Rule { Borda, Majority, Product, Sum, Yayambo };

inline constexpr std::array<Rule, 5> kAllRules = {Rule::Borda, Rule::Majority, Rule::Product,
                                                  Rule::Sum, Rule::Yayambo};

std::string_view rule_name(Rule rule);
std::optional<Rule> parse_rule(std::string_view name);

struct RuleResult {
  Rule rule;
  Distribution fused;
  Decision decision;
  std::optional<VoteVector> votes;         // majority only
  std::optional<FusionOutcome> consensus;  // yayambo only
};

RuleResult fuse_with(Rule rule, const EnsembleSnapshot& ensemble,
                     const ConsensusParams& params = {}, bool keep_trajectory = false);

}  // namespace yayambo
