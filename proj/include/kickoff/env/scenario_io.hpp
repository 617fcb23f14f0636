#ifndef KICKOFF_ENV_SCENARIO_IO_HPP_
#define KICKOFF_ENV_SCENARIO_IO_HPP_

#include <istream>
#include <ostream>
#include <span>
#include <string>

#include "kickoff/common/toml.hpp"
#include "kickoff/env/types.hpp"

namespace kickoff::env {

// Scenario files are TOML; positions are per-team lists in the attacking
// frame. All keys live under [scenario].
ScenarioConfig load_scenario(const toml::Document& doc);
ScenarioConfig load_scenario_file(const std::string& path);
std::string scenario_to_toml(const ScenarioConfig& sc);

// Binary snapshot of a full match state (including its rng), bit-exact on
// round-trip. Used by training checkpoints to freeze worker environments.
void write_state(std::ostream& os, const MatchState& s);
MatchState read_state(std::istream& is);

// Order-stable content hash of the dynamic state; replay logs and
// determinism checks compare these.
std::uint64_t state_digest(const MatchState& s);

// One JSONL line per step: step counter, post-step digest, both action
// lists, and the step's events.
std::string replay_line(const MatchState& after, std::span<const Action> home,
                        std::span<const Action> away, std::span<const Event> events);

}  // namespace kickoff::env

#endif  // KICKOFF_ENV_SCENARIO_IO_HPP_
