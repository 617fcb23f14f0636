#ifndef KICKOFF_LEAGUE_LEAGUE_HPP_
#define KICKOFF_LEAGUE_LEAGUE_HPP_

#include <cstdint>
#include <deque>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "kickoff/common/rng.hpp"
#include "kickoff/env/types.hpp"
#include "kickoff/league/pool.hpp"
#include "kickoff/rollout/worker.hpp"

namespace kickoff::league {

enum class Phase : std::uint8_t { kCurriculum = 0, kChallenge = 1, kGeneralize = 2 };

struct MatchResult {
  rollout::Outcome outcome = rollout::Outcome::kDraw;
  int score_home = 0;
  int score_away = 0;
  std::size_t length = 0;
};

// Derives the outcome from the score so the two can never disagree.
MatchResult match_result(int score_home, int score_away, std::size_t length);
MatchResult match_result(const rollout::EpisodeRecord& episode);

// Ten staged scenarios with a rising win-rate bar, then one shared self-play
// scenario for the alternating phases. All knobs are plain data so a config
// file can override any of them.
struct CurriculumSchedule {
  std::vector<env::ScenarioConfig> scenarios;
  std::vector<double> strength_factors;  // opponent reaction gate per stage
  std::vector<double> thresholds;        // advancement win rate per stage
  env::ScenarioConfig selfplay;
  double selfplay_threshold = 0.75;
  std::size_t window_capacity = 100;

  void validate() const;
};

// Stage 1 is a nearly open lane in front of the opponent goal; later stages
// pull the defenders onto the ball until stage 8+ is a symmetric kickoff.
CurriculumSchedule default_curriculum(std::size_t players_per_team);

// Where training currently sits, plus the rolling evidence for advancement.
struct PhaseState {
  Phase phase = Phase::kCurriculum;
  std::size_t scenario = 1;  // 1-based stage index while in the curriculum
  std::deque<rollout::Outcome> window;
  std::size_t curriculum_passed = 0;
  std::size_t challenge_passed = 0;
  std::size_t generalize_passed = 0;
  std::uint64_t phase_env_steps = 0;  // completed-episode steps this phase
  double phase_elapsed_seconds = 0.0;

  double win_rate() const;  // wins / window size; 0 while empty
  bool window_full(std::size_t capacity) const { return window.size() >= capacity; }

  void save(std::ostream& os) const;
  void load(std::istream& is);
};

double threshold(const PhaseState& state, const CurriculumSchedule& schedule);
const env::ScenarioConfig& scenario_for(const PhaseState& state,
                                        const CurriculumSchedule& schedule);
std::string phase_label(const PhaseState& state);

void record_result(PhaseState& state, const MatchResult& result,
                   std::size_t window_capacity);

// True when the window is full and its win rate clears the phase threshold.
bool advance_ready(const PhaseState& state, const CurriculumSchedule& schedule);

// Moves to the next stage/phase and resets the window and phase accounting.
// Callers snapshot the live policy into the pool first.
void advance(PhaseState& state, const CurriculumSchedule& schedule);

struct OpponentChoice {
  const PoolEntry* entry = nullptr;  // nullptr -> scripted heuristic
  double strength = 1.0;
};

// Stage 1 plays the scripted side; later curriculum stages replay the
// snapshot that passed the previous stage, gated by that stage's strength.
// Challenge favors the newest snapshot 0.8/0.2; Generalize weights entries
// by (1 - p)^2 where p is the live policy's win rate against them.
OpponentChoice select_opponent(const PhaseState& state, const CurriculumSchedule& schedule,
                               std::span<const PoolEntry> pool, Rng& rng);

}  // namespace kickoff::league

#endif  // KICKOFF_LEAGUE_LEAGUE_HPP_
