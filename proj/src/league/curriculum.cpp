#include <algorithm>
#include <stdexcept>

#include "kickoff/league/league.hpp"

namespace kickoff::league {
namespace {

std::vector<Vec2> kickoff_shape(std::size_t n) {
  std::vector<Vec2> shape = {{-0.015, 0.0}, {-0.25, 0.12}, {-0.25, -0.12}, {-0.45, 0.0}};
  while (shape.size() < n) {
    const double j = static_cast<double>(shape.size() - 4);
    shape.push_back({-0.55 - 0.05 * j, shape.size() % 2 ? 0.15 : -0.15});
  }
  shape.resize(n);
  return shape;
}

// Deep and wide of the goal mouth: out of the shot lane until interpolation
// pulls them forward.
std::vector<Vec2> retreated_shape(std::size_t n) {
  std::vector<Vec2> shape = {{-0.75, 0.30}, {-0.75, -0.30}, {-0.85, 0.25}, {-0.85, -0.25}};
  while (shape.size() < n) {
    const double j = static_cast<double>(shape.size() - 4);
    shape.push_back({-0.9 - 0.02 * j, shape.size() % 2 ? 0.2 : -0.2});
  }
  shape.resize(n);
  return shape;
}

std::vector<Vec2> lerp_shapes(const std::vector<Vec2>& a, const std::vector<Vec2>& b,
                              double f) {
  if (f <= 0.0) return a;
  if (f >= 1.0) return b;  // endpoint exactness: a + 1.0*(b-a) drifts in f64
  std::vector<Vec2> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    out[i] = {a[i].x + f * (b[i].x - a[i].x), a[i].y + f * (b[i].y - a[i].y)};
  }
  return out;
}

}  // namespace

void CurriculumSchedule::validate() const {
  if (scenarios.empty()) throw std::invalid_argument("schedule: no scenarios");
  if (strength_factors.size() != scenarios.size() || thresholds.size() != scenarios.size()) {
    throw std::invalid_argument("schedule: per-stage lists disagree in length");
  }
  for (double s : strength_factors) {
    if (!(s > 0.0 && s <= 1.0)) throw std::invalid_argument("schedule: strength outside (0,1]");
  }
  for (std::size_t k = 0; k < thresholds.size(); ++k) {
    if (!(thresholds[k] >= 0.0 && thresholds[k] <= 1.0)) {
      throw std::invalid_argument("schedule: threshold outside [0,1]");
    }
    if (k > 0 && thresholds[k] < thresholds[k - 1]) {
      throw std::invalid_argument("schedule: thresholds must not decrease");
    }
  }
  if (!(selfplay_threshold >= 0.0 && selfplay_threshold <= 1.0)) {
    throw std::invalid_argument("schedule: self-play threshold outside [0,1]");
  }
  if (window_capacity == 0) throw std::invalid_argument("schedule: zero window");
  if (selfplay.episode_step_limit <= 0) {
    throw std::invalid_argument("schedule: self-play scenario without step limit");
  }
}

CurriculumSchedule default_curriculum(std::size_t players_per_team) {
  if (players_per_team == 0) throw std::invalid_argument("curriculum: zero players");
  CurriculumSchedule sched;
  sched.strength_factors = {0.05, 0.1, 0.15, 0.2, 0.3, 0.4, 0.5, 0.6, 0.75, 0.95};

  const auto kickoff = kickoff_shape(players_per_team);
  const auto retreated = retreated_shape(players_per_team);
  for (std::size_t k = 1; k <= 10; ++k) {
    env::ScenarioConfig sc;
    sc.id = static_cast<int>(k);
    sc.players_per_team = players_per_team;
    sc.episode_step_limit = 500;
    sc.terminate_on_score_or_fault = true;
    sc.offside_enabled = false;
    sc.opponent_strength = sched.strength_factors[k - 1];
    sc.home_positions = kickoff;
    // stages 1..8 walk the defense from retreated to a mirrored kickoff
    const double f = std::min(1.0, static_cast<double>(k - 1) / 7.0);
    sc.away_positions = lerp_shapes(retreated, kickoff, f);
    sched.scenarios.push_back(std::move(sc));

    sched.thresholds.push_back(k >= 8 ? 0.75 : 0.55 + static_cast<double>(k - 1) *
                                                          ((0.75 - 0.55) / 7.0));
  }

  sched.selfplay.id = 11;
  sched.selfplay.players_per_team = players_per_team;
  sched.selfplay.episode_step_limit = 3000;
  sched.selfplay.terminate_on_score_or_fault = false;
  sched.selfplay.offside_enabled = true;
  sched.selfplay.opponent_strength = 1.0;
  sched.selfplay.home_positions = kickoff;
  sched.selfplay.away_positions = kickoff;
  return sched;
}

}  // namespace kickoff::league
