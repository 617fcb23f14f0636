#include "kickoff/env/heuristic.hpp"

#include <cmath>
#include <limits>

#include "kickoff/env/match.hpp"

namespace kickoff::env {
namespace {

constexpr double kShootRange = 0.35;
constexpr double kPressureRadius = 0.08;
constexpr double kLongPassGap = 0.3;   // teammate this far ahead -> long ball
constexpr double kSprintRange = 0.5;   // sprint when the goal is still far
constexpr double kSlideReach = 0.03;
constexpr double kArriveRadius = 0.02;

Action move_toward(Vec2 from, Vec2 to, Team team) {
  if (distance2(from, to) <= kArriveRadius * kArriveRadius) return Action::kIdle;
  const int k = nearest_compass(to - from, team);
  return static_cast<Action>(static_cast<int>(Action::kMoveE) + k);
}

Vec2 attack_frame_to_abs(Team t, Vec2 v) {
  const double s = attack_sign(t);
  return {s * v.x, s * v.y};
}

}  // namespace

Action heuristic_action(const MatchState& s, Team team, std::size_t index,
                        double strength, Rng& rng) {
  const PlayerState& me = s.players(team)[index];

  // reaction gate: sluggish players keep doing what they were doing
  if (rng.uniform() >= strength) {
    if (me.move_dir >= 0)
      return static_cast<Action>(static_cast<int>(Action::kMoveE) + me.move_dir);
    return Action::kIdle;
  }

  const FieldConfig& f = s.scenario.field;
  const Vec2 goal = goal_center(f, team);
  const auto& mates = s.players(team);
  const auto& opps = s.players(other(team));
  const bool i_control = s.ball.controller && *s.ball.controller == PlayerId{team, index};

  if (i_control) {
    const double goal_dist = distance(me.position, goal);
    if (goal_dist < kShootRange) return Action::kShot;

    double pressure = std::numeric_limits<double>::infinity();
    for (const auto& q : opps) pressure = std::min(pressure, distance(q.position, me.position));
    if (pressure < kPressureRadius && mates.size() > 1) {
      double my_x = attack_sign(team) * me.position.x;
      double best_x = -std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < mates.size(); ++i) {
        if (i == index) continue;
        best_x = std::max(best_x, attack_sign(team) * mates[i].position.x);
      }
      return best_x - my_x > kLongPassGap ? Action::kLongPass : Action::kShortPass;
    }
    if (!me.sprinting && goal_dist > kSprintRange && me.tiredness < 0.7)
      return Action::kSprint;
    return move_toward(me.position, goal, team);
  }

  const auto& init =
      team == Team::kHome ? s.scenario.home_positions : s.scenario.away_positions;
  const bool my_team_controls = s.ball.controller && s.ball.controller->team == team;
  if (my_team_controls) {
    // run a supporting lane ahead of the ball, keeping my own y channel
    Vec2 target = s.ball.position + attack_dir(team) * 0.12;
    target.y = attack_frame_to_abs(team, init[index]).y;
    return move_toward(me.position, target, team);
  }

  // opponents control the ball or it is loose: the closest player chases
  double my_d2 = distance2(me.position, s.ball.position);
  bool nearest = true;
  for (std::size_t i = 0; i < mates.size(); ++i) {
    if (i == index) continue;
    const double d2 = distance2(mates[i].position, s.ball.position);
    if (d2 < my_d2 || (d2 == my_d2 && i < index)) {
      nearest = false;
      break;
    }
  }
  if (nearest) {
    const bool opp_controls = s.ball.controller && s.ball.controller->team != team;
    if (opp_controls && me.sliding_cooldown == 0 &&
        distance(me.position, s.ball.position) <= kSlideReach)
      return Action::kSlide;
    return move_toward(me.position, s.ball.position, team);
  }

  // everyone else holds a lane between formation spot and the ball
  const Vec2 formation = attack_frame_to_abs(team, init[index]);
  const Vec2 target = formation * 0.7 + s.ball.position * 0.3;
  return move_toward(me.position, target, team);
}

}  // namespace kickoff::env
