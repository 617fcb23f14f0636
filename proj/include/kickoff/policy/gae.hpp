#ifndef KICKOFF_POLICY_GAE_HPP_
#define KICKOFF_POLICY_GAE_HPP_

#include <cstdint>
#include <span>
#include <vector>

namespace kickoff::policy {

struct GaeResult {
  std::vector<double> advantages;
  std::vector<double> returns;  // advantages + values
};

// Backward recursion over one contiguous segment:
//   delta_t = r_t + gamma * V_{t+1} * (1 - done_t) - V_t
//   A_t     = delta_t + gamma * lambda * (1 - done_t) * A_{t+1}
// `bootstrap_value` stands in for V at the step past the end (used only
// when the segment is truncated rather than terminated).
GaeResult compute_gae(std::span<const double> rewards, std::span<const double> values,
                      double bootstrap_value, std::span<const std::uint8_t> dones,
                      double gamma, double lambda);

}  // namespace kickoff::policy

#endif  // KICKOFF_POLICY_GAE_HPP_
