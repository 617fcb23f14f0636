#include "kickoff/rewards/rnd.hpp"

#include <stdexcept>

namespace kickoff::rewards {

namespace {
constexpr std::size_t kOutputs = 4;
}

Rnd::Rnd(std::size_t state_dim, Rng& rng, std::size_t hidden)
    : target_(nn::MlpSpec{{state_dim, hidden, kOutputs}}, rng),
      predictor_(nn::MlpSpec{{state_dim, hidden, hidden, hidden, kOutputs}}, rng),
      opt_(predictor_.parameter_count()),
      input_norm_(state_dim) {}

Rnd::Rnd(nn::Mlp target, nn::Mlp predictor)
    : target_(std::move(target)),
      predictor_(std::move(predictor)),
      opt_(predictor_.parameter_count()),
      input_norm_(target_.input_dim()) {
  if (target_.input_dim() != predictor_.input_dim() ||
      target_.output_dim() != kOutputs || predictor_.output_dim() != kOutputs) {
    throw std::invalid_argument("target/predictor shapes disagree");
  }
}

double Rnd::raw_bonus(std::span<const double> state_vec) const {
  std::vector<double> x(state_vec.size());
  input_norm_.normalize(state_vec, x);
  const auto want = target_.forward(x);
  const auto got = predictor_.forward(x);
  double mse = 0.0;
  for (std::size_t k = 0; k < kOutputs; ++k) {
    const double d = got[k] - want[k];
    mse += d * d;
  }
  return mse / static_cast<double>(kOutputs);
}

double Rnd::bonus(std::span<const double> state_vec) const {
  return raw_bonus(state_vec) / bonus_norm_.stddev();
}

double Rnd::update(const std::vector<std::vector<double>>& states, double lr) {
  if (states.empty()) throw std::invalid_argument("empty state batch");
  for (const auto& s : states) input_norm_.observe(s);

  const double scale = 1.0 / static_cast<double>(states.size());
  std::vector<double> grad(predictor_.parameter_count(), 0.0);
  std::vector<double> x;
  std::vector<double> dy(kOutputs);
  nn::ForwardCache cache;
  double loss = 0.0;
  for (const auto& s : states) {
    x.resize(s.size());
    input_norm_.normalize(s, x);
    const auto want = target_.forward(x);
    const auto got = predictor_.forward(x, cache);
    double sample = 0.0;
    for (std::size_t k = 0; k < kOutputs; ++k) {
      const double d = got[k] - want[k];
      sample += d * d;
      dy[k] = 2.0 * d * scale / static_cast<double>(kOutputs);
    }
    sample /= static_cast<double>(kOutputs);
    bonus_norm_.observe(sample);
    loss += sample;
    predictor_.backward(cache, dy, grad);
  }
  opt_.step(predictor_.mutable_parameters(), grad, lr);
  return loss * scale;
}

}  // namespace kickoff::rewards
