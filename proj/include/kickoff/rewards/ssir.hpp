#ifndef KICKOFF_REWARDS_SSIR_HPP_
#define KICKOFF_REWARDS_SSIR_HPP_

#include <span>
#include <vector>

#include "kickoff/nn/adam.hpp"
#include "kickoff/nn/mlp.hpp"
#include "kickoff/policy/types.hpp"

namespace kickoff::rewards {

// Regression targets for the intrinsic head: extrinsic advantages of the
// view, batch-normalized (1e-8 std guard) and clipped to [-1, 1]. Exposed
// so tests can pin the reconstruction independently of the update step.
std::vector<double> ssir_targets(const policy::RolloutBatch& batch,
                                 std::span<const std::size_t> timesteps);

// Self-supervised intrinsic head: a small tanh-output MLP over actor
// observations with one output per action. The bonus reads the entry of
// the action each agent actually took and averages across agents.
class Ssir {
 public:
  Ssir(std::size_t obs_dim, std::size_t n_actions, Rng& rng, std::size_t hidden = 64);
  explicit Ssir(nn::Mlp net);  // checkpoint restore; optimizer restored separately

  double intrinsic(std::span<const double> obs, int action) const;
  double bonus(const std::vector<std::vector<double>>& observations,
               std::span<const int> actions) const;

  // One Adam step regressing r(o_i)[a_i] toward ssir_targets; returns the
  // mean squared error over all (timestep, agent) pairs in the view.
  double update(const policy::RolloutBatch& batch, std::span<const std::size_t> timesteps,
                double lr);

  const nn::Mlp& net() const { return net_; }
  nn::Mlp& mutable_net() { return net_; }
  const nn::Adam& optimizer() const { return opt_; }
  nn::Adam& optimizer() { return opt_; }

 private:
  nn::Mlp net_;
  nn::Adam opt_;
};

}  // namespace kickoff::rewards

#endif  // KICKOFF_REWARDS_SSIR_HPP_
