#ifndef KICKOFF_POLICY_VALUE_NORMALIZER_HPP_
#define KICKOFF_POLICY_VALUE_NORMALIZER_HPP_

#include <span>

#include "kickoff/common/moments.hpp"

namespace kickoff::policy {

// Running mean/std of raw return targets. The critic regresses against
// normalized targets; consumers denormalize its raw output.
class ValueNormalizer {
 public:
  void observe(std::span<const double> targets);  // rejects non-finite values

  double normalize(double x) const { return (x - m_.mean()) / m_.stddev(); }
  double denormalize(double z) const { return z * m_.stddev() + m_.mean(); }

  std::uint64_t count() const { return m_.count(); }
  double mean() const { return m_.mean(); }
  double stddev() const { return m_.stddev(); }

  const RunningMoments& moments() const { return m_; }
  void restore(std::uint64_t count, double raw_mean, double raw_m2) {
    m_.restore(count, raw_mean, raw_m2);
  }

 private:
  RunningMoments m_;
};

}  // namespace kickoff::policy

#endif  // KICKOFF_POLICY_VALUE_NORMALIZER_HPP_
