#ifndef KICKOFF_FEATURES_OBSERVATION_HPP_
#define KICKOFF_FEATURES_OBSERVATION_HPP_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "kickoff/env/types.hpp"

namespace kickoff::features {

inline constexpr std::size_t kPeDim = 16;

// Transformer-style sinusoid pair per frequency:
// out[2i] = sin(p / 10000^(2i/d)), out[2i+1] = cos(same).
std::vector<double> positional_encoding(std::size_t player_id, std::size_t d_pe);

// own(7) + ball(9) + teammates 4(N-1) + opponents 4N + extras(3) + PE(d_pe)
std::size_t actor_dim(std::size_t players_per_team, std::size_t d_pe = kPeDim);

// players 8N + ball(5) + possession(3) + score(2) + time(1)
std::size_t critic_dim(std::size_t players_per_team);

// Per-agent view in the team's attacking frame: both sides observe as if
// they play left-to-right. Writes exactly actor_dim(N) values.
void actor_observation(const env::MatchState& s, env::Team team, std::size_t index,
                       std::span<double> out, std::size_t d_pe = kPeDim);
std::vector<double> actor_observation(const env::MatchState& s, env::Team team,
                                      std::size_t index, std::size_t d_pe = kPeDim);

// Global critic input, absolute coordinates from the home perspective.
void critic_observation(const env::MatchState& s, std::span<double> out);
std::vector<double> critic_observation(const env::MatchState& s);

// name,offset,width table for both encodings; written into run directories
// so downstream analysis can index features without reading the code.
std::string layout_csv(std::size_t players_per_team, std::size_t d_pe = kPeDim);

}  // namespace kickoff::features

#endif  // KICKOFF_FEATURES_OBSERVATION_HPP_
