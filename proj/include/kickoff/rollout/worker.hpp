#ifndef KICKOFF_ROLLOUT_WORKER_HPP_
#define KICKOFF_ROLLOUT_WORKER_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "kickoff/env/match.hpp"
#include "kickoff/nn/mlp.hpp"
#include "kickoff/policy/gae.hpp"
#include "kickoff/policy/types.hpp"
#include "kickoff/policy/value_normalizer.hpp"
#include "kickoff/rewards/rnd.hpp"
#include "kickoff/rewards/shaped.hpp"
#include "kickoff/rewards/ssir.hpp"
#include "kickoff/rewards/variant.hpp"

namespace kickoff::rollout {

struct WorkerConfig {
  std::size_t num_workers = 40;
  std::size_t steps_per_worker = 500;

  void validate() const {
    if (num_workers == 0 || steps_per_worker == 0) {
      throw std::invalid_argument("worker layout must be at least 1x1");
    }
  }
};

// The frozen side: either a policy snapshot or the scripted controller.
// `strength` gates reactions per player per step for the scripted side and
// for snapshot policies alike (self-play snapshots run at 1.0).
struct Opponent {
  const nn::Mlp* policy = nullptr;  // nullptr -> scripted heuristic
  double strength = 1.0;
};

// Reward assembly knobs for a rollout, owned by the learner; workers only
// read through const pointers.
struct RewardShaping {
  rewards::RewardVariant variant = rewards::RewardVariant::kBase;
  const rewards::Ssir* ssir = nullptr;
  const rewards::Rnd* rnd = nullptr;
  double alpha_ssir = 0.1;
  bool bonus_active = false;
  rewards::ShapedRewardConfig shaped;
};

enum class Outcome : std::uint8_t { kWin, kDraw, kLoss };

struct EpisodeRecord {
  std::size_t start = 0;
  std::size_t length = 0;
  bool completed = false;  // reached a terminal inside this rollout
  Outcome outcome = Outcome::kDraw;
  int score_home = 0;
  int score_away = 0;
};

struct RolloutBuffer {
  std::size_t worker_index = 0;
  std::vector<policy::Transition> transitions;
  std::vector<EpisodeRecord> episodes;  // contiguous cover of transitions
  double bootstrap_value = 0.0;         // V of the state after the last step
  std::uint64_t policy_version = 0;
};

// One persistent collection unit. The env and rng live across rollouts --
// an episode may span several rollouts and resumes where it stopped -- and
// both are part of the run checkpoint.
class Worker {
 public:
  Worker(std::size_t index, env::ScenarioConfig scenario, std::uint64_t run_seed);

  // Curriculum advancement: next episode starts under the new scenario.
  void set_scenario(const env::ScenarioConfig& scenario);
  const env::ScenarioConfig& scenario() const { return scenario_; }
  std::size_t index() const { return index_; }

  RolloutBuffer collect(const nn::Mlp& actor, const nn::Mlp& critic,
                        const policy::ValueNormalizer& vnorm, const Opponent& opponent,
                        const RewardShaping& shaping, std::size_t steps,
                        std::uint64_t policy_version);

  void save(std::ostream& os) const;
  void load(std::istream& is);

 private:
  void ensure_episode();

  std::size_t index_;
  env::ScenarioConfig scenario_;
  env::MatchState env_;
  Rng rng_;
  bool env_ready_ = false;
};

// Builds one worker per slot with per-index seed streams.
std::vector<Worker> make_workers(const WorkerConfig& cfg, const env::ScenarioConfig& scenario,
                                 std::uint64_t run_seed);

// Runs every worker for `cfg.steps_per_worker` steps on its own thread and
// returns buffers in worker-index order. A worker that throws is restored
// to its pre-rollout state and retried once; a second failure propagates.
std::vector<RolloutBuffer> collect(std::vector<Worker>& workers, const WorkerConfig& cfg,
                                   const nn::Mlp& actor, const nn::Mlp& critic,
                                   const policy::ValueNormalizer& vnorm,
                                   const Opponent& opponent, const RewardShaping& shaping,
                                   std::uint64_t policy_version);

// Concatenates buffers (worker-index order) into one batch and fills
// advantages/returns via masked GAE with per-buffer bootstrap values.
// Takes ownership: transitions are moved, not copied.
policy::RolloutBatch merge(std::vector<RolloutBuffer> buffers, double gamma,
                           double lambda);

struct RolloutSummary {
  std::size_t completed = 0;
  std::size_t wins = 0;
  std::size_t draws = 0;
  std::size_t losses = 0;
  double win_rate = 0.0;  // wins / completed; 0 when nothing completed
  double mean_reward = 0.0;
  std::size_t transitions = 0;
};

RolloutSummary summarize(std::span<const RolloutBuffer> buffers);

}  // namespace kickoff::rollout

#endif  // KICKOFF_ROLLOUT_WORKER_HPP_
