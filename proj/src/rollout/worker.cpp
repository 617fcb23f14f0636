#include "kickoff/rollout/worker.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "kickoff/common/binio.hpp"
#include "kickoff/common/digest.hpp"
#include "kickoff/env/heuristic.hpp"
#include "kickoff/env/scenario_io.hpp"
#include "kickoff/features/observation.hpp"
#include "kickoff/nn/categorical.hpp"
#include "kickoff/policy/jrpo.hpp"

namespace kickoff::rollout {
namespace {

Outcome outcome_of(const env::MatchState& s) {
  if (s.score_home > s.score_away) return Outcome::kWin;
  if (s.score_home < s.score_away) return Outcome::kLoss;
  return Outcome::kDraw;
}

env::Action sticky_or_idle(const env::PlayerState& p) {
  if (p.move_dir >= 0) {
    return static_cast<env::Action>(static_cast<int>(env::Action::kMoveE) + p.move_dir);
  }
  return env::Action::kIdle;
}

std::uint64_t events_digest(std::span<const env::Event> events) {
  Digest d;
  for (const auto& e : events) {
    d.add_i32(static_cast<std::int32_t>(e.type));
    d.add_i32(static_cast<std::int32_t>(e.team));
    d.add_i32(e.good ? 1 : 0);
  }
  return d.value();
}

}  // namespace

Worker::Worker(std::size_t index, env::ScenarioConfig scenario, std::uint64_t run_seed)
    : index_(index), scenario_(std::move(scenario)), rng_(run_seed, index) {}

void Worker::set_scenario(const env::ScenarioConfig& scenario) {
  scenario_ = scenario;
  if (env_ready_ && env_.finished) env_ready_ = false;  // next episode picks it up
}

void Worker::ensure_episode() {
  if (!env_ready_ || env_.finished) {
    env_ = env::reset(scenario_, rng_.next_u64());
    env_ready_ = true;
  }
}

RolloutBuffer Worker::collect(const nn::Mlp& actor, const nn::Mlp& critic,
                              const policy::ValueNormalizer& vnorm,
                              const Opponent& opponent, const RewardShaping& shaping,
                              std::size_t steps, std::uint64_t policy_version) {
  RolloutBuffer buf;
  buf.worker_index = index_;
  buf.policy_version = policy_version;
  buf.transitions.reserve(steps);
  std::size_t episode_start = 0;

  for (std::size_t t = 0; t < steps; ++t) {
    ensure_episode();
    const std::size_t n = env_.scenario.players_per_team;

    std::vector<std::vector<double>> home_obs(n);
    for (std::size_t i = 0; i < n; ++i) {
      home_obs[i] = features::actor_observation(env_, env::Team::kHome, i);
    }
    auto decision = policy::act(actor, home_obs, rng_);

    std::vector<env::Action> away_actions(n, env::Action::kIdle);
    if (opponent.policy) {
      for (std::size_t i = 0; i < n; ++i) {
        // same reaction gate as the scripted side
        if (rng_.uniform() >= opponent.strength) {
          away_actions[i] = sticky_or_idle(env_.players(env::Team::kAway)[i]);
          continue;
        }
        const auto obs = features::actor_observation(env_, env::Team::kAway, i);
        const auto logits = opponent.policy->forward(obs);
        away_actions[i] = static_cast<env::Action>(nn::sample_categorical(logits, rng_).index);
      }
    } else {
      for (std::size_t i = 0; i < n; ++i) {
        away_actions[i] =
            env::heuristic_action(env_, env::Team::kAway, i, opponent.strength, rng_);
      }
    }

    std::vector<double> state_vec = features::critic_observation(env_);
    const double value = vnorm.denormalize(critic.forward(state_vec)[0]);

    const env::MatchState prev = env_;
    std::vector<env::Action> home_actions(n);
    for (std::size_t i = 0; i < n; ++i) {
      home_actions[i] = static_cast<env::Action>(decision.actions[i]);
    }
    const auto result = env::step(env_, home_actions, away_actions);

    const double base = rewards::base_reward(prev, result.events, env_, shaping.shaped).home;
    double mean_intrinsic = 0.0;
    double novelty = 0.0;
    if (shaping.bonus_active) {
      if (shaping.variant == rewards::RewardVariant::kSsir && shaping.ssir) {
        mean_intrinsic = shaping.ssir->bonus(home_obs, decision.actions);
      } else if (shaping.variant == rewards::RewardVariant::kRnd && shaping.rnd) {
        novelty = shaping.rnd->bonus(features::critic_observation(env_));
      }
    }

    policy::Transition tr;
    tr.agent_obs = std::move(home_obs);
    tr.state = std::move(state_vec);
    tr.actions = std::move(decision.actions);
    tr.old_log_probs = std::move(decision.log_probs);
    tr.reward = rewards::total_reward(shaping.variant, base, mean_intrinsic, novelty,
                                      shaping.alpha_ssir);
    tr.value = value;
    tr.done = env_.finished;
    tr.events_digest = events_digest(result.events);
    buf.transitions.push_back(std::move(tr));

    if (env_.finished) {
      buf.episodes.push_back({episode_start, buf.transitions.size() - episode_start,
                              true, outcome_of(env_), env_.score_home, env_.score_away});
      episode_start = buf.transitions.size();
    }
  }

  if (episode_start < buf.transitions.size()) {
    buf.episodes.push_back({episode_start, buf.transitions.size() - episode_start,
                            false, outcome_of(env_), env_.score_home, env_.score_away});
  }
  if (!env_.finished) {
    buf.bootstrap_value = vnorm.denormalize(critic.forward(features::critic_observation(env_))[0]);
  }
  return buf;
}

void Worker::save(std::ostream& os) const {
  binio::write_u64(os, index_);
  binio::write_string(os, env::scenario_to_toml(scenario_));
  for (std::uint64_t w : rng_.state()) binio::write_u64(os, w);
  binio::write_u64(os, env_ready_ ? 1 : 0);
  if (env_ready_) env::write_state(os, env_);
}

void Worker::load(std::istream& is) {
  index_ = binio::read_u64(is);
  scenario_ = env::load_scenario(toml::Document::parse(binio::read_string(is)));
  std::array<std::uint64_t, 4> words{};
  for (auto& w : words) w = binio::read_u64(is);
  rng_.set_state(words);
  env_ready_ = binio::read_u64(is) != 0;
  if (env_ready_) env_ = env::read_state(is);
}

std::vector<Worker> make_workers(const WorkerConfig& cfg, const env::ScenarioConfig& scenario,
                                 std::uint64_t run_seed) {
  cfg.validate();
  std::vector<Worker> workers;
  workers.reserve(cfg.num_workers);
  for (std::size_t i = 0; i < cfg.num_workers; ++i) {
    workers.emplace_back(i, scenario, run_seed);
  }
  return workers;
}

std::vector<RolloutBuffer> collect(std::vector<Worker>& workers, const WorkerConfig& cfg,
                                   const nn::Mlp& actor, const nn::Mlp& critic,
                                   const policy::ValueNormalizer& vnorm,
                                   const Opponent& opponent, const RewardShaping& shaping,
                                   std::uint64_t policy_version) {
  cfg.validate();
  if (workers.size() != cfg.num_workers) {
    throw std::invalid_argument("worker pool size disagrees with config");
  }

  // pre-rollout snapshots make the single retry exact: same env, same seeds
  std::vector<std::string> snapshots(workers.size());
  for (std::size_t i = 0; i < workers.size(); ++i) {
    std::ostringstream os;
    workers[i].save(os);
    snapshots[i] = os.str();
  }

  std::vector<RolloutBuffer> buffers(workers.size());
  std::vector<std::exception_ptr> errors(workers.size());
  {
    std::vector<std::thread> pool;
    pool.reserve(workers.size());
    for (std::size_t i = 0; i < workers.size(); ++i) {
      pool.emplace_back([&, i] {
        try {
          buffers[i] = workers[i].collect(actor, critic, vnorm, opponent, shaping,
                                          cfg.steps_per_worker, policy_version);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
  }

  for (std::size_t i = 0; i < workers.size(); ++i) {
    if (!errors[i]) continue;
    std::istringstream is(snapshots[i]);
    workers[i].load(is);
    try {
      buffers[i] = workers[i].collect(actor, critic, vnorm, opponent, shaping,
                                      cfg.steps_per_worker, policy_version);
    } catch (const std::exception& e) {
      throw std::runtime_error("worker " + std::to_string(i) +
                               " failed twice: " + e.what());
    }
  }
  return buffers;
}

policy::RolloutBatch merge(std::vector<RolloutBuffer> buffers, double gamma, double lambda) {
  if (buffers.empty()) throw std::invalid_argument("no buffers to merge");
  std::sort(buffers.begin(), buffers.end(),
            [](const RolloutBuffer& a, const RolloutBuffer& b) {
              return a.worker_index < b.worker_index;
            });

  policy::RolloutBatch batch;
  batch.policy_version = buffers.front().policy_version;
  for (auto& buf : buffers) {
    if (buf.policy_version != batch.policy_version) {
      throw std::logic_error("buffers from different policy versions");
    }
    const std::size_t t_count = buf.transitions.size();
    std::vector<double> rewards(t_count), values(t_count);
    std::vector<std::uint8_t> dones(t_count);
    for (std::size_t t = 0; t < t_count; ++t) {
      rewards[t] = buf.transitions[t].reward;
      values[t] = buf.transitions[t].value;
      dones[t] = buf.transitions[t].done ? 1 : 0;
    }
    auto gae = policy::compute_gae(rewards, values, buf.bootstrap_value, dones, gamma, lambda);
    for (std::size_t t = 0; t < t_count; ++t) {
      batch.transitions.push_back(std::move(buf.transitions[t]));
      batch.advantages.push_back(gae.advantages[t]);
      batch.returns.push_back(gae.returns[t]);
    }
  }
  return batch;
}

RolloutSummary summarize(std::span<const RolloutBuffer> buffers) {
  RolloutSummary s;
  double reward_sum = 0.0;
  for (const auto& buf : buffers) {
    s.transitions += buf.transitions.size();
    for (const auto& tr : buf.transitions) reward_sum += tr.reward;
    for (const auto& ep : buf.episodes) {
      if (!ep.completed) continue;
      ++s.completed;
      if (ep.outcome == Outcome::kWin) ++s.wins;
      else if (ep.outcome == Outcome::kDraw) ++s.draws;
      else ++s.losses;
    }
  }
  if (s.completed > 0) s.win_rate = static_cast<double>(s.wins) / static_cast<double>(s.completed);
  if (s.transitions > 0) s.mean_reward = reward_sum / static_cast<double>(s.transitions);
  return s;
}

}  // namespace kickoff::rollout
