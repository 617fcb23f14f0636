#ifndef KICKOFF_REWARDS_SHAPED_HPP_
#define KICKOFF_REWARDS_SHAPED_HPP_

#include <span>

#include "kickoff/env/types.hpp"

namespace kickoff::rewards {

struct ShapedRewardConfig {
  double goal = 1.0;
  double hold_ball = 0.0001;
  double pass = 0.05;
  double grouping_penalty = -0.001;   // per clustered agent
  double grouping_threshold = 0.05;   // strictly closer than this counts
  double out_of_bounds = -0.001;      // per out-of-bounds event
};

struct RewardPair {
  double home = 0.0;
  double away = 0.0;
};

// Team-level shaped reward for one step: goals (from the score delta),
// possession, completed passes, clustering, and out-of-bounds events.
// home = raw(home) - raw(away); away = -home, so the pair is exactly
// zero-sum by construction.
RewardPair base_reward(const env::MatchState& prev, std::span<const env::Event> events,
                       const env::MatchState& next, const ShapedRewardConfig& cfg = {});

// Number of `team` players with at least one teammate strictly within the
// clustering threshold. Exposed as the grouping-term oracle.
int clustered_agents(const env::MatchState& s, env::Team team, double threshold);

}  // namespace kickoff::rewards

#endif  // KICKOFF_REWARDS_SHAPED_HPP_
