#ifndef KICKOFF_POLICY_TYPES_HPP_
#define KICKOFF_POLICY_TYPES_HPP_

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace kickoff::policy {

struct TrainConfig {
  double gamma = 0.99;
  double lambda_gae = 0.95;
  double epsilon_clip = 0.2;
  double beta_entropy = 0.01;
  double lr_actor = 5e-4;
  double lr_critic = 5e-4;
  std::size_t minibatch_size = 1024;
  std::size_t epochs_per_rollout = 4;
  double alpha_ssir = 0.1;
  std::size_t warmup_rollouts = 40;

  void validate() const {
    if (gamma < 0.0 || gamma > 1.0) throw std::invalid_argument("gamma out of [0,1]");
    if (lambda_gae < 0.0 || lambda_gae > 1.0) throw std::invalid_argument("lambda out of [0,1]");
    if (epsilon_clip <= 0.0) throw std::invalid_argument("epsilon_clip must be positive");
    if (beta_entropy < 0.0) throw std::invalid_argument("beta_entropy must be >= 0");
    if (alpha_ssir < 0.0) throw std::invalid_argument("alpha_ssir must be >= 0");
    if (minibatch_size == 0) throw std::invalid_argument("minibatch_size must be positive");
    if (epochs_per_rollout == 0) throw std::invalid_argument("epochs must be positive");
  }
};

// One environment step as seen by the learner: per-agent views plus the
// global critic input, all from the learning (home) team's perspective.
struct Transition {
  std::vector<std::vector<double>> agent_obs;  // N x actor_dim
  std::vector<double> state;                   // critic input
  std::vector<int> actions;                    // N
  std::vector<double> old_log_probs;           // N, from the acting policy
  double reward = 0.0;
  double value = 0.0;  // denormalized V(s_t) at collection time
  bool done = false;
  std::uint64_t events_digest = 0;
};

struct RolloutBatch {
  std::vector<Transition> transitions;
  std::vector<double> advantages;  // aligned with transitions
  std::vector<double> returns;
  std::uint64_t rollout_index = 0;
  std::uint64_t policy_version = 0;

  std::size_t size() const { return transitions.size(); }
  std::size_t agents() const {
    return transitions.empty() ? 0 : transitions.front().actions.size();
  }
  void require_advantages() const {
    if (advantages.size() != transitions.size() || returns.size() != transitions.size()) {
      throw std::logic_error("batch advantages/returns not computed");
    }
  }
};

}  // namespace kickoff::policy

#endif  // KICKOFF_POLICY_TYPES_HPP_
