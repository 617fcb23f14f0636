#ifndef KICKOFF_DRIVER_CONFIG_HPP_
#define KICKOFF_DRIVER_CONFIG_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "kickoff/common/toml.hpp"
#include "kickoff/league/league.hpp"
#include "kickoff/policy/types.hpp"
#include "kickoff/rewards/variant.hpp"
#include "kickoff/rollout/worker.hpp"

namespace kickoff::driver {

struct NetworkConfig {
  std::vector<std::size_t> actor_hidden = {128, 128, 128};
  std::vector<std::size_t> critic_hidden = {128, 128, 128};
  std::size_t side_hidden = 64;  // intrinsic-reward and novelty networks

  void validate() const;
};

// Everything a run needs, resolved: the curriculum is fully built (defaults
// plus any file overrides) by the loaders below.
struct RunConfig {
  std::uint64_t seed = 1;
  std::uint64_t env_step_budget = 2'000'000;
  std::size_t players_per_team = 4;
  rewards::RewardVariant variant = rewards::RewardVariant::kBase;
  std::string output_dir = "runs/dev";
  std::uint64_t checkpoint_every_rollouts = 25;
  bool dedicated_probes = false;   // probe matches feed the window instead
  std::size_t probe_matches = 16;  // of rollout episodes (scripted stages only)
  rollout::WorkerConfig workers{8, 500};
  policy::TrainConfig train;
  NetworkConfig network;
  league::CurriculumSchedule curriculum;

  void validate() const;
};

// Desk-scale defaults: 4v4, 8 workers x 500 steps, 2M-step budget.
RunConfig default_run_config();

// Strict TOML load: unknown keys are errors. KICKOFF_SEED and
// KICKOFF_OUTPUT_DIR override the file when apply_env is set.
RunConfig run_config_from_toml(const toml::Document& doc, bool apply_env);
RunConfig load_run_config(const std::string& path, bool apply_env = true);

// Round-trips: parsing the echo yields an identical echo.
std::string run_config_toml(const RunConfig& cfg);

// Shortest decimal that parses back to exactly `v`.
std::string format_double(double v);

}  // namespace kickoff::driver

#endif  // KICKOFF_DRIVER_CONFIG_HPP_
