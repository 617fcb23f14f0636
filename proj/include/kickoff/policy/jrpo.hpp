#ifndef KICKOFF_POLICY_JRPO_HPP_
#define KICKOFF_POLICY_JRPO_HPP_

#include <algorithm>
#include <span>
#include <vector>

#include "kickoff/common/rng.hpp"
#include "kickoff/nn/mlp.hpp"
#include "kickoff/policy/types.hpp"
#include "kickoff/policy/value_normalizer.hpp"

namespace kickoff::policy {

struct ActResult {
  std::vector<int> actions;
  std::vector<double> log_probs;
};

// Samples one action per agent from the shared actor's categorical head.
ActResult act(const nn::Mlp& actor, const std::vector<std::vector<double>>& observations,
              Rng& rng);

// Log of the product policy: sum of per-agent log-probabilities.
double joint_log_prob(std::span<const double> per_agent_log_probs);

// One timestep of the clipped joint-ratio surrogate.
inline double clipped_surrogate(double rho, double adv, double eps) {
  const double clipped = std::clamp(rho, 1.0 - eps, 1.0 + eps);
  return std::min(rho * adv, clipped * adv);
}

struct JrpoStats {
  double objective = 0.0;      // surrogate + beta * entropy (to be maximized)
  double surrogate = 0.0;      // mean clipped-ratio term
  double entropy = 0.0;        // mean joint entropy (sum over agents)
  double clip_fraction = 0.0;  // timesteps where the clipped candidate was strictly smaller
  double approx_kl = 0.0;      // mean(joint_old - joint_new)
};

// Evaluates the joint-ratio objective over the given timestep view and
// accumulates its ascent gradient into grad_out (zeroed here). Advantages
// are normalized across the view when requested (1e-8 std guard). Callers
// negate the gradient to feed a minimizer.
JrpoStats jrpo_objective(const nn::Mlp& actor, const RolloutBatch& batch,
                         std::span<const std::size_t> timesteps, double eps_clip,
                         double beta_entropy, bool normalize_advantages,
                         std::span<double> grad_out);

// Mean squared error between the critic output and normalized return
// targets over the view; writes the descent gradient into grad_out.
double critic_loss(const nn::Mlp& critic, const RolloutBatch& batch,
                   std::span<const std::size_t> timesteps, const ValueNormalizer& norm,
                   std::span<double> grad_out);

// 1 - Var(returns - values) / Var(returns); 0 when returns are constant.
double explained_variance(std::span<const double> returns, std::span<const double> values);

// Fisher-Yates permutation of [0, n) driven by the run rng, so minibatch
// order is reproducible from the seed.
std::vector<std::size_t> shuffled_indices(std::size_t n, Rng& rng);

}  // namespace kickoff::policy

#endif  // KICKOFF_POLICY_JRPO_HPP_
