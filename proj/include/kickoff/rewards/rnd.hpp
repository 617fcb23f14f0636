#ifndef KICKOFF_REWARDS_RND_HPP_
#define KICKOFF_REWARDS_RND_HPP_

#include <span>
#include <vector>

#include "kickoff/common/moments.hpp"
#include "kickoff/nn/adam.hpp"
#include "kickoff/nn/mlp.hpp"

namespace kickoff::rewards {

// Novelty bonus from a frozen random target and a trainable predictor,
// both mapping the (input-normalized) critic state vector to 4 outputs.
// The target is only ever read after construction.
class Rnd {
 public:
  explicit Rnd(std::size_t state_dim, Rng& rng, std::size_t hidden = 64);
  Rnd(nn::Mlp target, nn::Mlp predictor);  // checkpoint restore

  // Mean over the 4 components of (predictor - target)^2 at the
  // input-normalized state.
  double raw_bonus(std::span<const double> state_vec) const;
  // raw_bonus divided by the running std of observed raw bonuses; >= 0.
  double bonus(std::span<const double> state_vec) const;

  // One training pass on a batch of raw state vectors: feeds the input
  // normalizer, takes an Adam step on the predictor MSE, and observes the
  // resulting raw bonuses into the bonus scaler. Returns the mean loss
  // (= mean raw bonus before the step).
  double update(const std::vector<std::vector<double>>& states, double lr);

  const nn::Mlp& target() const { return target_; }
  const nn::Mlp& predictor() const { return predictor_; }
  nn::Mlp& mutable_predictor() { return predictor_; }
  const nn::Adam& optimizer() const { return opt_; }
  nn::Adam& optimizer() { return opt_; }
  const VectorMoments& input_normalizer() const { return input_norm_; }
  VectorMoments& input_normalizer() { return input_norm_; }
  const RunningMoments& bonus_normalizer() const { return bonus_norm_; }
  RunningMoments& bonus_normalizer() { return bonus_norm_; }

 private:
  nn::Mlp target_;     // frozen: no non-const accessor exists
  nn::Mlp predictor_;
  nn::Adam opt_;
  VectorMoments input_norm_;
  RunningMoments bonus_norm_;
};

}  // namespace kickoff::rewards

#endif  // KICKOFF_REWARDS_RND_HPP_
