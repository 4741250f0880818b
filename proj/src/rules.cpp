#include "yayambo/rules.hpp"

namespace yayambo {

std::string_view rule_name(Rule rule) {
  switch (rule) {
    case Rule::Borda: return "borda";
    case Rule::Majority: return "majority";
    case Rule::Product: return "product";
    case Rule::Sum: return "sum";
    case Rule::Yayambo: return "yayambo";
  }
  return "unknown";
}

std::optional<Rule> parse_rule(std::string_view name) {
  for (Rule r : kAllRules) {
    if (rule_name(r) == name) return r;
  }
  return std::nullopt;
}

RuleResult fuse_with(Rule rule, const EnsembleSnapshot& ensemble, const ConsensusParams& params,
                     bool keep_trajectory) {
  switch (rule) {
    case Rule::Sum: {
      auto fused = fuse_sum(ensemble);
      const auto d = decide(fused);
      return RuleResult{rule, std::move(fused), d, std::nullopt, std::nullopt};
    }
    case Rule::Product: {
      auto fused = fuse_product(ensemble);
      const auto d = decide(fused);
      return RuleResult{rule, std::move(fused), d, std::nullopt, std::nullopt};
    }
    case Rule::Borda: {
      auto fused = fuse_borda(ensemble);
      const auto d = decide(fused);
      return RuleResult{rule, std::move(fused), d, std::nullopt, std::nullopt};
    }
    case Rule::Majority: {
      auto res = fuse_majority(ensemble);
      // Decide on the raw votes; renormalizing does not move the argmax.
      const auto d = decide(res.votes.votes);
      return RuleResult{rule, std::move(res.fused), d, std::move(res.votes), std::nullopt};
    }
    case Rule::Yayambo: {
      auto outcome = fuse_consensus(ensemble, params, keep_trajectory);
      auto fused = outcome.fused;
      const auto d = outcome.decision;
      return RuleResult{rule, std::move(fused), d, std::nullopt, std::move(outcome)};
    }
  }
  throw Error(ErrorCode::InvalidParams, "unknown rule");
}

}  // namespace yayambo
