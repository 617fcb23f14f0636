#ifndef KICKOFF_NN_CATEGORICAL_HPP_
#define KICKOFF_NN_CATEGORICAL_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include "kickoff/common/rng.hpp"

namespace kickoff::nn {

// Stable (max-subtracted) distribution utilities over raw logits.

void log_softmax(std::span<const double> logits, std::span<double> out);
std::vector<double> log_softmax(std::span<const double> logits);
std::vector<double> softmax(std::span<const double> logits);
double entropy_from_logits(std::span<const double> logits);

struct CategoricalSample {
  std::size_t index;
  double log_prob;
};

CategoricalSample sample_categorical(std::span<const double> logits, Rng& rng);
std::size_t argmax(std::span<const double> xs);

}  // namespace kickoff::nn

#endif  // KICKOFF_NN_CATEGORICAL_HPP_
