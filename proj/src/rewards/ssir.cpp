#include "kickoff/rewards/ssir.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace kickoff::rewards {

std::vector<double> ssir_targets(const policy::RolloutBatch& batch,
                                 std::span<const std::size_t> timesteps) {
  batch.require_advantages();
  if (timesteps.empty()) throw std::invalid_argument("empty minibatch");
  std::vector<double> t(timesteps.size());
  for (std::size_t k = 0; k < t.size(); ++k) t[k] = batch.advantages[timesteps[k]];
  const double mean = std::accumulate(t.begin(), t.end(), 0.0) / static_cast<double>(t.size());
  double var = 0.0;
  for (double x : t) var += (x - mean) * (x - mean);
  var /= static_cast<double>(t.size());
  const double denom = std::sqrt(var) + 1e-8;
  for (double& x : t) x = std::clamp((x - mean) / denom, -1.0, 1.0);
  return t;
}

Ssir::Ssir(std::size_t obs_dim, std::size_t n_actions, Rng& rng, std::size_t hidden)
    : net_(nn::MlpSpec{{obs_dim, hidden, n_actions}, nn::Activation::kTanh, 0.01}, rng),
      opt_(net_.parameter_count()) {}

Ssir::Ssir(nn::Mlp net) : net_(std::move(net)), opt_(net_.parameter_count()) {
  if (net_.spec().output != nn::Activation::kTanh) {
    throw std::invalid_argument("intrinsic head must have tanh outputs");
  }
}

double Ssir::intrinsic(std::span<const double> obs, int action) const {
  const auto out = net_.forward(obs);
  return out[static_cast<std::size_t>(action)];
}

double Ssir::bonus(const std::vector<std::vector<double>>& observations,
                   std::span<const int> actions) const {
  if (observations.size() != actions.size() || observations.empty()) {
    throw std::invalid_argument("one observation per action required");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < observations.size(); ++i) {
    sum += intrinsic(observations[i], actions[i]);
  }
  return sum / static_cast<double>(observations.size());
}

double Ssir::update(const policy::RolloutBatch& batch,
                    std::span<const std::size_t> timesteps, double lr) {
  const auto targets = ssir_targets(batch, timesteps);

  std::size_t pairs = 0;
  for (std::size_t t : timesteps) pairs += batch.transitions[t].actions.size();
  const double scale = 1.0 / static_cast<double>(pairs);

  std::vector<double> grad(net_.parameter_count(), 0.0);
  std::vector<double> dy(net_.output_dim());
  nn::ForwardCache cache;
  double loss = 0.0;
  for (std::size_t k = 0; k < timesteps.size(); ++k) {
    const auto& tr = batch.transitions[timesteps[k]];
    for (std::size_t i = 0; i < tr.actions.size(); ++i) {
      const auto out = net_.forward(tr.agent_obs[i], cache);
      const auto a = static_cast<std::size_t>(tr.actions[i]);
      const double err = out[a] - targets[k];
      loss += err * err;
      std::fill(dy.begin(), dy.end(), 0.0);
      dy[a] = 2.0 * err * scale;
      net_.backward(cache, dy, grad);
    }
  }
  opt_.step(net_.mutable_parameters(), grad, lr);
  return loss * scale;
}

}  // namespace kickoff::rewards
