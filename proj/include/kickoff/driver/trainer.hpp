#ifndef KICKOFF_DRIVER_TRAINER_HPP_
#define KICKOFF_DRIVER_TRAINER_HPP_

#include <cstdint>
#include <fstream>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "kickoff/driver/config.hpp"
#include "kickoff/driver/status.hpp"
#include "kickoff/eval/eval.hpp"
#include "kickoff/league/league.hpp"
#include "kickoff/league/pool.hpp"
#include "kickoff/nn/adam.hpp"
#include "kickoff/nn/mlp.hpp"
#include "kickoff/policy/jrpo.hpp"
#include "kickoff/policy/value_normalizer.hpp"
#include "kickoff/rewards/rnd.hpp"
#include "kickoff/rewards/ssir.hpp"
#include "kickoff/rollout/worker.hpp"

namespace kickoff::driver {

// Everything logged for one rollout cycle; serialized as one JSONL record.
struct RolloutLog {
  std::uint64_t rollout = 0;
  std::uint64_t env_steps = 0;  // cumulative, after this rollout
  std::string phase;
  int scenario_id = 0;
  std::string opponent;
  double opponent_strength = 1.0;
  std::size_t window_size = 0;
  double window_win_rate = 0.0;
  double threshold = 0.0;
  rollout::RolloutSummary summary;
  policy::JrpoStats actor_stats;  // means over minibatch updates
  double actor_grad_norm = 0.0;   // mean pre-clip global norm
  double critic_loss = 0.0;
  double critic_grad_norm = 0.0;
  double explained_variance = 0.0;
  double value_mean = 0.0;
  double value_std = 0.0;
  bool bonus_active = false;
  double side_loss = 0.0;  // intrinsic-head MSE or novelty-predictor loss
  bool advanced = false;
};

struct TrainOutcome {
  std::uint64_t rollouts = 0;
  std::uint64_t env_steps = 0;
  std::string final_phase;
  std::string checkpoint_file;  // empty when no rollout ran
};

// The learner: owns the networks, the league state, and the worker fleet,
// and drives the collect -> update -> bookkeeping cycle. All file writes
// happen on this thread.
class Trainer {
 public:
  explicit Trainer(RunConfig cfg);
  Trainer(RunConfig cfg, const std::string& resume_dir);

  const RunConfig& config() const { return cfg_; }

  // One full cycle: opponent selection, rollout, reward bookkeeping,
  // actor/critic (and side network) updates, league window, advancement,
  // logs, cadence checkpoint.
  const RolloutLog& step_rollout();

  bool budget_exhausted() const { return env_steps_ >= cfg_.env_step_budget; }

  // Runs to budget, writes the final checkpoint and the phase report.
  TrainOutcome run();

  void save_checkpoint();
  std::string checkpoint_path() const;

  const nn::Mlp& actor() const { return actor_; }
  const nn::Mlp& critic() const { return critic_; }
  const policy::ValueNormalizer& value_normalizer() const { return vnorm_; }
  const league::PhaseState& phase() const { return phase_; }
  const league::PolicyPool& pool() const { return pool_; }
  const std::vector<rollout::Worker>& workers() const { return workers_; }
  std::uint64_t rollout_index() const { return rollout_index_; }
  std::uint64_t env_steps() const { return env_steps_; }
  bool has_ssir() const { return ssir_ != nullptr; }
  bool has_rnd() const { return rnd_ != nullptr; }
  const RolloutLog& last_log() const { return last_log_; }
  const std::vector<PhaseAccount>& phase_accounts() const { return phase_accounts_; }

 private:
  Trainer(RunConfig cfg, const std::string& resume_dir, bool resuming);

  void init_run_dir(bool resuming);
  void load_checkpoint(const std::string& file);
  void update_policy(const policy::RolloutBatch& batch, RolloutLog& log);
  void feed_window(const std::vector<rollout::RolloutBuffer>& buffers, bool vs_snapshot,
                   std::uint64_t opponent_id, double opponent_strength);
  const nn::Mlp& opponent_net(std::uint64_t id);
  void append_logs(const RolloutLog& log);
  void write_phase_report();
  RunStatus current_status() const;

  RunConfig cfg_;
  nn::Mlp actor_;
  nn::Mlp critic_;
  nn::Adam opt_actor_;
  nn::Adam opt_critic_;
  policy::ValueNormalizer vnorm_;
  std::unique_ptr<rewards::Ssir> ssir_;
  std::unique_ptr<rewards::Rnd> rnd_;
  league::PhaseState phase_;
  league::PolicyPool pool_;
  std::vector<rollout::Worker> workers_;
  Rng learner_rng_;
  std::uint64_t rollout_index_ = 0;
  std::uint64_t env_steps_ = 0;
  std::vector<PhaseAccount> phase_accounts_;  // back() is the live phase
  std::map<std::uint64_t, nn::Mlp> opponent_cache_;
  std::ofstream metrics_;
  std::ofstream progress_;
  double run_elapsed_seconds_ = 0.0;  // work time this session, logs only
  RolloutLog last_log_;
};

TrainOutcome train(const RunConfig& cfg, const std::string& resume_dir = "");

}  // namespace kickoff::driver

#endif  // KICKOFF_DRIVER_TRAINER_HPP_
