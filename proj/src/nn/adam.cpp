#include "kickoff/nn/adam.hpp"

#include <cmath>
#include <stdexcept>

namespace kickoff::nn {

Adam::Adam(std::size_t n, AdamConfig cfg) : cfg_(cfg), m_(n, 0.0), v_(n, 0.0) {}

bool Adam::step(std::span<double> params, std::span<const double> grads, double lr) {
  if (params.size() != m_.size() || grads.size() != m_.size())
    throw std::invalid_argument("adam: size mismatch");
  for (double g : grads) {
    if (!std::isfinite(g)) {
      ++rejected_;
      return false;
    }
  }
  ++t_;
  const double bc1 = 1.0 - std::pow(cfg_.beta1, static_cast<double>(t_));
  const double bc2 = 1.0 - std::pow(cfg_.beta2, static_cast<double>(t_));
  for (std::size_t i = 0; i < m_.size(); ++i) {
    m_[i] = cfg_.beta1 * m_[i] + (1.0 - cfg_.beta1) * grads[i];
    v_[i] = cfg_.beta2 * v_[i] + (1.0 - cfg_.beta2) * grads[i] * grads[i];
    const double mhat = m_[i] / bc1;
    const double vhat = v_[i] / bc2;
    params[i] -= lr * mhat / (std::sqrt(vhat) + cfg_.eps);
  }
  return true;
}

void Adam::restore(std::uint64_t t, std::uint64_t rejected, std::span<const double> m,
                   std::span<const double> v) {
  if (m.size() != m_.size() || v.size() != v_.size())
    throw std::invalid_argument("adam: restore size mismatch");
  t_ = t;
  rejected_ = rejected;
  m_.assign(m.begin(), m.end());
  v_.assign(v.begin(), v.end());
}

}  // namespace kickoff::nn
