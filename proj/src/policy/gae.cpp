#include "kickoff/policy/gae.hpp"

#include <stdexcept>

namespace kickoff::policy {

GaeResult compute_gae(std::span<const double> rewards, std::span<const double> values,
                      double bootstrap_value, std::span<const std::uint8_t> dones,
                      double gamma, double lambda) {
  const std::size_t t_max = rewards.size();
  if (values.size() != t_max || dones.size() != t_max) {
    throw std::invalid_argument("gae input lengths disagree");
  }
  GaeResult out;
  out.advantages.resize(t_max);
  out.returns.resize(t_max);
  double next_adv = 0.0;
  for (std::size_t k = t_max; k-- > 0;) {
    const double mask = dones[k] ? 0.0 : 1.0;
    const double next_value = (k + 1 < t_max) ? values[k + 1] : bootstrap_value;
    const double delta = rewards[k] + gamma * next_value * mask - values[k];
    next_adv = delta + gamma * lambda * mask * next_adv;
    out.advantages[k] = next_adv;
    out.returns[k] = next_adv + values[k];
  }
  return out;
}

}  // namespace kickoff::policy
