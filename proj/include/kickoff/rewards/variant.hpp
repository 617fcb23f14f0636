#ifndef KICKOFF_REWARDS_VARIANT_HPP_
#define KICKOFF_REWARDS_VARIANT_HPP_

#include <stdexcept>
#include <string>

namespace kickoff::rewards {

enum class RewardVariant { kBase, kSsir, kRnd };

inline RewardVariant parse_variant(const std::string& name) {
  if (name == "base") return RewardVariant::kBase;
  if (name == "ssir") return RewardVariant::kSsir;
  if (name == "rnd") return RewardVariant::kRnd;
  throw std::invalid_argument("unknown reward variant: " + name);
}

inline const char* variant_name(RewardVariant v) {
  switch (v) {
    case RewardVariant::kBase: return "base";
    case RewardVariant::kSsir: return "ssir";
    case RewardVariant::kRnd: return "rnd";
  }
  return "?";
}

// Exploration bonuses only contribute once the side networks have had
// warm-up rollouts to settle.
inline bool bonus_active(std::size_t rollout_index, std::size_t warmup_rollouts) {
  return rollout_index >= warmup_rollouts;
}

inline double total_reward(RewardVariant v, double base, double mean_intrinsic,
                           double rnd_bonus, double alpha_ssir) {
  switch (v) {
    case RewardVariant::kBase: return base;
    case RewardVariant::kSsir: return base + alpha_ssir * mean_intrinsic;
    case RewardVariant::kRnd: return base + rnd_bonus;
  }
  return base;
}

}  // namespace kickoff::rewards

#endif  // KICKOFF_REWARDS_VARIANT_HPP_
