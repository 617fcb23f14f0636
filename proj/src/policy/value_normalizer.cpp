#include "kickoff/policy/value_normalizer.hpp"

#include <cmath>
#include <stdexcept>

namespace kickoff::policy {

void ValueNormalizer::observe(std::span<const double> targets) {
  for (double t : targets) {
    if (!std::isfinite(t)) throw std::invalid_argument("non-finite return target");
  }
  m_.observe_batch(targets);
}

}  // namespace kickoff::policy
