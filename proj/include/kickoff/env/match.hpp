#ifndef KICKOFF_ENV_MATCH_HPP_
#define KICKOFF_ENV_MATCH_HPP_

#include <span>

#include "kickoff/env/types.hpp"

namespace kickoff::env {

// Fresh episode: players at scenario positions (away side point-reflected),
// ball loose at the scenario ball position, score 0-0, step 0.
MatchState reset(const ScenarioConfig& scenario, std::uint64_t seed);

// Advances one step. Action lists are per team, length N, indexed by player.
// Mutates `state` and reports the step's events/reward/termination.
StepResult step(MatchState& state, std::span<const Action> home_actions,
                std::span<const Action> away_actions);

// Point-reflects the world through the field center and swaps the teams.
// step(mirrored(s), away_a, home_a) == mirrored(step(s, home_a, away_a)).
MatchState mirrored(const MatchState& state);

bool inside_field(const FieldConfig& f, Vec2 p);

// Goal center the team is attacking.
Vec2 goal_center(const FieldConfig& f, Team team);

}  // namespace kickoff::env

#endif  // KICKOFF_ENV_MATCH_HPP_
