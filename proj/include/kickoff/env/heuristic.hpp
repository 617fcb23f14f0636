#ifndef KICKOFF_ENV_HEURISTIC_HPP_
#define KICKOFF_ENV_HEURISTIC_HPP_

#include "kickoff/env/types.hpp"

namespace kickoff::env {

// Scripted controller. With probability `strength` the player makes a fresh
// decision (carrier: advance/shoot/pass; off-ball: chase, support, or hold a
// defensive lane); otherwise it repeats its sticky movement or idles, which
// models slower reactions at lower strengths. Stateless: the "previous
// movement" is the sticky heading already in PlayerState.
Action heuristic_action(const MatchState& state, Team team, std::size_t index,
                        double strength, Rng& rng);

}  // namespace kickoff::env

#endif  // KICKOFF_ENV_HEURISTIC_HPP_
