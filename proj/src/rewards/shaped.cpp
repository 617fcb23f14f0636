#include "kickoff/rewards/shaped.hpp"

namespace kickoff::rewards {

int clustered_agents(const env::MatchState& s, env::Team team, double threshold) {
  const auto& players = s.players(team);
  const double t2 = threshold * threshold;
  int clustered = 0;
  for (std::size_t i = 0; i < players.size(); ++i) {
    for (std::size_t j = 0; j < players.size(); ++j) {
      if (i == j) continue;
      if (distance2(players[i].position, players[j].position) < t2) {
        ++clustered;
        break;
      }
    }
  }
  return clustered;
}

namespace {

double raw_score(const env::MatchState& prev, std::span<const env::Event> events,
                 const env::MatchState& next, env::Team team,
                 const ShapedRewardConfig& cfg) {
  const int prev_score = team == env::Team::kHome ? prev.score_home : prev.score_away;
  const int next_score = team == env::Team::kHome ? next.score_home : next.score_away;
  double r = cfg.goal * static_cast<double>(next_score - prev_score);

  if (next.ball.controller && next.ball.controller->team == team) r += cfg.hold_ball;

  for (const auto& e : events) {
    if (e.team != team) continue;
    if (e.type == env::EventType::kPassAttempt && e.good) r += cfg.pass;
    if (e.type == env::EventType::kOutOfBounds) r += cfg.out_of_bounds;
  }

  r += cfg.grouping_penalty * clustered_agents(next, team, cfg.grouping_threshold);
  return r;
}

}  // namespace

RewardPair base_reward(const env::MatchState& prev, std::span<const env::Event> events,
                       const env::MatchState& next, const ShapedRewardConfig& cfg) {
  const double home = raw_score(prev, events, next, env::Team::kHome, cfg) -
                      raw_score(prev, events, next, env::Team::kAway, cfg);
  return {home, -home};
}

}  // namespace kickoff::rewards
