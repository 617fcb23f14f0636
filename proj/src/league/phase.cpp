#include <algorithm>
#include <istream>
#include <ostream>
#include <stdexcept>

#include "kickoff/common/binio.hpp"
#include "kickoff/league/league.hpp"

namespace kickoff::league {
namespace {

const char* kChallengeLabel = "challenge";
const char* kGeneralizeLabel = "generalize";

std::string curriculum_label(std::size_t stage) {
  return "curriculum-" + std::to_string(stage);
}

}  // namespace

MatchResult match_result(int score_home, int score_away, std::size_t length) {
  MatchResult r;
  r.score_home = score_home;
  r.score_away = score_away;
  r.length = length;
  r.outcome = score_home > score_away   ? rollout::Outcome::kWin
              : score_home < score_away ? rollout::Outcome::kLoss
                                        : rollout::Outcome::kDraw;
  return r;
}

MatchResult match_result(const rollout::EpisodeRecord& episode) {
  return match_result(episode.score_home, episode.score_away, episode.length);
}

double PhaseState::win_rate() const {
  if (window.empty()) return 0.0;
  const auto wins = std::count(window.begin(), window.end(), rollout::Outcome::kWin);
  return static_cast<double>(wins) / static_cast<double>(window.size());
}

void PhaseState::save(std::ostream& os) const {
  binio::write_u64(os, static_cast<std::uint64_t>(phase));
  binio::write_u64(os, scenario);
  binio::write_u64(os, window.size());
  for (auto o : window) binio::write_u64(os, static_cast<std::uint64_t>(o));
  binio::write_u64(os, curriculum_passed);
  binio::write_u64(os, challenge_passed);
  binio::write_u64(os, generalize_passed);
  binio::write_u64(os, phase_env_steps);
  binio::write_f64(os, phase_elapsed_seconds);
}

void PhaseState::load(std::istream& is) {
  phase = static_cast<Phase>(binio::read_u64(is));
  scenario = binio::read_u64(is);
  window.clear();
  const std::uint64_t count = binio::read_u64(is);
  for (std::uint64_t i = 0; i < count; ++i) {
    window.push_back(static_cast<rollout::Outcome>(binio::read_u64(is)));
  }
  curriculum_passed = binio::read_u64(is);
  challenge_passed = binio::read_u64(is);
  generalize_passed = binio::read_u64(is);
  phase_env_steps = binio::read_u64(is);
  phase_elapsed_seconds = binio::read_f64(is);
}

double threshold(const PhaseState& state, const CurriculumSchedule& schedule) {
  if (state.phase == Phase::kCurriculum) {
    if (state.scenario < 1 || state.scenario > schedule.thresholds.size()) {
      throw std::out_of_range("league: stage index outside the schedule");
    }
    return schedule.thresholds[state.scenario - 1];
  }
  return schedule.selfplay_threshold;
}

const env::ScenarioConfig& scenario_for(const PhaseState& state,
                                        const CurriculumSchedule& schedule) {
  if (state.phase == Phase::kCurriculum) {
    if (state.scenario < 1 || state.scenario > schedule.scenarios.size()) {
      throw std::out_of_range("league: stage index outside the schedule");
    }
    return schedule.scenarios[state.scenario - 1];
  }
  return schedule.selfplay;
}

std::string phase_label(const PhaseState& state) {
  switch (state.phase) {
    case Phase::kCurriculum: return curriculum_label(state.scenario);
    case Phase::kChallenge: return kChallengeLabel;
    case Phase::kGeneralize: return kGeneralizeLabel;
  }
  return "?";
}

void record_result(PhaseState& state, const MatchResult& result,
                   std::size_t window_capacity) {
  state.window.push_back(result.outcome);
  while (state.window.size() > window_capacity) state.window.pop_front();
  state.phase_env_steps += result.length;
}

bool advance_ready(const PhaseState& state, const CurriculumSchedule& schedule) {
  return state.window_full(schedule.window_capacity) &&
         state.win_rate() >= threshold(state, schedule);
}

void advance(PhaseState& state, const CurriculumSchedule& schedule) {
  switch (state.phase) {
    case Phase::kCurriculum:
      ++state.curriculum_passed;
      if (state.scenario < schedule.scenarios.size()) {
        ++state.scenario;
      } else {
        state.phase = Phase::kChallenge;
      }
      break;
    case Phase::kChallenge:
      ++state.challenge_passed;
      state.phase = Phase::kGeneralize;
      break;
    case Phase::kGeneralize:
      ++state.generalize_passed;
      state.phase = Phase::kChallenge;  // the two phases alternate from here on
      break;
  }
  state.window.clear();
  state.phase_env_steps = 0;
  state.phase_elapsed_seconds = 0.0;
}

OpponentChoice select_opponent(const PhaseState& state, const CurriculumSchedule& schedule,
                               std::span<const PoolEntry> pool, Rng& rng) {
  if (state.phase == Phase::kCurriculum) {
    if (state.scenario == 1) {
      return {nullptr, schedule.strength_factors.front()};
    }
    if (pool.empty()) throw std::runtime_error("league: stage needs a snapshot opponent");
    const std::string want = curriculum_label(state.scenario - 1);
    const PoolEntry* pick = nullptr;
    for (const auto& e : pool) {
      if (e.label == want) pick = &e;  // last match wins: the newest one
    }
    if (!pick) pick = &pool.back();
    return {pick, schedule.strength_factors[state.scenario - 1]};
  }

  if (pool.empty()) throw std::runtime_error("league: self-play needs a non-empty pool");
  if (state.phase == Phase::kChallenge) {
    if (pool.size() == 1 || rng.bernoulli(0.8)) return {&pool.back(), 1.0};
    return {&pool[rng.uniform_index(pool.size() - 1)], 1.0};
  }

  // hard-opponent weighting; entries the live policy has never met count as
  // even odds
  double total = 0.0;
  for (const auto& e : pool) {
    const double miss = 1.0 - e.rate();
    total += miss * miss;
  }
  if (total <= 0.0) return {&pool[rng.uniform_index(pool.size())], 1.0};
  double u = rng.uniform() * total;
  for (const auto& e : pool) {
    const double miss = 1.0 - e.rate();
    u -= miss * miss;
    if (u <= 0.0) return {&e, 1.0};
  }
  return {&pool.back(), 1.0};
}

}  // namespace kickoff::league
