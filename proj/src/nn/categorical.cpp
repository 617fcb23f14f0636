#include "kickoff/nn/categorical.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace kickoff::nn {

void log_softmax(std::span<const double> logits, std::span<double> out) {
  if (logits.empty() || out.size() != logits.size())
    throw std::invalid_argument("categorical: bad logits span");
  const double mx = *std::max_element(logits.begin(), logits.end());
  double sum = 0.0;
  for (std::size_t i = 0; i < logits.size(); ++i) {
    out[i] = logits[i] - mx;
    sum += std::exp(out[i]);
  }
  const double lse = std::log(sum);
  for (double& v : out) v -= lse;
}

std::vector<double> log_softmax(std::span<const double> logits) {
  std::vector<double> out(logits.size());
  log_softmax(logits, out);
  return out;
}

std::vector<double> softmax(std::span<const double> logits) {
  std::vector<double> out = log_softmax(logits);
  for (double& v : out) v = std::exp(v);
  return out;
}

double entropy_from_logits(std::span<const double> logits) {
  std::vector<double> lp = log_softmax(logits);
  double h = 0.0;
  for (double v : lp) h -= std::exp(v) * v;
  return h;
}

CategoricalSample sample_categorical(std::span<const double> logits, Rng& rng) {
  std::vector<double> lp = log_softmax(logits);
  const double u = rng.uniform();
  double acc = 0.0;
  for (std::size_t i = 0; i < lp.size(); ++i) {
    acc += std::exp(lp[i]);
    if (u < acc) return {i, lp[i]};
  }
  // rounding left u above the accumulated mass; take the last category
  return {lp.size() - 1, lp.back()};
}

std::size_t argmax(std::span<const double> xs) {
  return static_cast<std::size_t>(
      std::max_element(xs.begin(), xs.end()) - xs.begin());
}

}  // namespace kickoff::nn
