#ifndef KICKOFF_DRIVER_STATUS_HPP_
#define KICKOFF_DRIVER_STATUS_HPP_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "kickoff/league/league.hpp"
#include "kickoff/league/pool.hpp"
#include "kickoff/nn/mlp.hpp"

namespace kickoff::driver {

// Env steps spent under one phase label, in the order the phases ran.
// Wall-clock is session-local (never checkpointed, so repeated runs stay
// bit-identical) and reported as zero for phases finished before a resume.
struct PhaseAccount {
  std::string label;
  std::uint64_t env_steps = 0;
  double elapsed_seconds = 0.0;
};

// The checkpoint's leading section: everything needed to describe a run
// without deserializing networks or workers.
struct RunStatus {
  std::uint64_t seed = 0;
  std::string variant;
  std::uint64_t players_per_team = 0;
  std::uint64_t rollout_index = 0;
  std::uint64_t env_steps = 0;
  league::PhaseState phase;
  std::vector<league::PoolEntry> pool_entries;
  std::uint64_t pool_next_id = 1;
  std::vector<PhaseAccount> phase_accounts;
};

void write_checkpoint_front(std::ostream& os, const RunStatus& status);
RunStatus read_checkpoint_front(std::istream& is);  // verifies magic + version

RunStatus read_run_status(const std::string& checkpoint_file);

// Front plus the first network: enough for offline evaluation.
std::pair<RunStatus, nn::Mlp> read_checkpoint_actor(const std::string& checkpoint_file);

// Human-readable phase/window/pool summary of a run directory.
void write_league_status(std::ostream& os, const std::string& run_dir);

struct EvalRequest {
  std::string checkpoint_file;
  std::size_t matches = 50;
  std::vector<std::uint64_t> seed_groups = {1, 2, 3, 4, 5};
  double opponent_strength = 0.6;  // medium-strength scripted baseline
  std::string out_dir;             // default: "<checkpoint dir>/eval"
};

// Plays `matches` full-pitch matches per seed group against the scripted
// opponent and writes report.csv plus one per-match CSV per group.
void run_evaluate(const EvalRequest& req);

}  // namespace kickoff::driver

#endif  // KICKOFF_DRIVER_STATUS_HPP_
