#include "kickoff/env/match.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace kickoff::env {
namespace {

// Attack-frame coordinates: multiply absolute coordinates by the team's
// attack sign. All aiming math runs in this frame so that the two halves of
// the pitch are bit-exact mirror images of each other.
Vec2 to_attack(Team t, Vec2 v) {
  const double s = attack_sign(t);
  return {s * v.x, s * v.y};
}

double clampd(double x, double lo, double hi) { return std::min(std::max(x, lo), hi); }

double walk_speed(const PlayerState& p, bool carrying) {
  double s = kin::kMaxSpeed * (1.0 - kin::kTirednessSlowdown * p.tiredness);
  if (p.sprinting) s *= kin::kSprintFactor;
  if (carrying && p.dribbling) s *= kin::kDribbleSpeedFactor;
  return s;
}

void validate(const ScenarioConfig& sc) {
  if (sc.players_per_team == 0) throw std::invalid_argument("scenario: N must be >= 1");
  if (sc.episode_step_limit <= 0)
    throw std::invalid_argument("scenario: step limit must be positive");
  if (!(sc.opponent_strength > 0.0 && sc.opponent_strength <= 1.0))
    throw std::invalid_argument("scenario: opponent_strength outside (0,1]");
  if (sc.players_per_team > 16)
    throw std::invalid_argument("scenario: more than 16 players per team unsupported");
  if (sc.home_positions.size() != sc.players_per_team ||
      sc.away_positions.size() != sc.players_per_team)
    throw std::invalid_argument("scenario: initial positions must list N players per team");
  if (!(sc.field.goal_half_width < sc.field.half_width))
    throw std::invalid_argument("scenario: goal wider than the pitch");
}

struct StepContext {
  MatchState& s;
  StepResult res;
  bool goal = false;
  Team goal_team = Team::kHome;
  bool foul = false;
  Team foul_team = Team::kHome;
  bool oob = false;
  Team oob_team = Team::kHome;
};

void emit(StepContext& c, EventType type, Team team, bool good = false) {
  c.res.events.push_back(Event{type, team, good});
  if (type == EventType::kFoul && !c.foul) {
    c.foul = true;
    c.foul_team = team;
  }
  if (type == EventType::kOutOfBounds && !c.oob) {
    c.oob = true;
    c.oob_team = team;
  }
}

// Ball changed hands to `id` while a kicked ball was in flight: classify the
// pass/shot and clear the pending record.
void resolve_control_event(StepContext& c, PlayerId id) {
  MatchState& s = c.s;
  if (!s.pending) return;
  const PendingKick pk = *s.pending;
  s.pending.reset();
  const bool same_team = id.team == pk.team;
  if (pk.kind == KickKind::kShot) {
    emit(c, EventType::kShotAttempt, pk.team, false);
    if (!same_team) emit(c, EventType::kInterception, id.team);
    return;
  }
  if (!same_team) {
    emit(c, EventType::kPassAttempt, pk.team, false);
    emit(c, EventType::kInterception, id.team);
    return;
  }
  if (id.index == pk.kicker) {
    emit(c, EventType::kPassAttempt, pk.team, false);
    return;
  }
  if (pk.offside_mask & (1u << id.index)) {
    emit(c, EventType::kPassAttempt, pk.team, false);
    emit(c, EventType::kFoul, pk.team);
    return;
  }
  emit(c, EventType::kPassAttempt, pk.team, true);
}

void take_control(StepContext& c, PlayerId id) {
  c.s.ball.controller = id;
  c.s.last_touch = id;
  resolve_control_event(c, id);
}

void do_kick(StepContext& c, PlayerId kicker_id, Action action) {
  MatchState& s = c.s;
  PlayerState& kicker = s.players(kicker_id.team)[kicker_id.index];
  const Team team = kicker_id.team;
  const auto& mates = s.players(team);

  KickKind kind;
  switch (action) {
    case Action::kShortPass: kind = KickKind::kShortPass; break;
    case Action::kLongPass: kind = KickKind::kLongPass; break;
    case Action::kHighPass: kind = KickKind::kHighPass; break;
    default: kind = KickKind::kShot; break;
  }

  Vec2 target = goal_center(s.scenario.field, team);
  if (kind == KickKind::kShortPass || kind == KickKind::kLongPass ||
      kind == KickKind::kHighPass) {
    bool found = false;
    double best = 0.0;
    for (std::size_t i = 0; i < mates.size(); ++i) {
      if (i == kicker_id.index) continue;
      const double key = kind == KickKind::kShortPass
                             ? -distance2(mates[i].position, kicker.position)
                             : to_attack(team, mates[i].position).x;
      if (!found || key > best) {
        found = true;
        best = key;
        target = mates[i].position;
      }
    }
    // with no teammate the kick just goes toward the goal
  }

  const Vec2 from = s.ball.position;
  Vec2 aim = to_attack(team, target - from);  // attack frame: mirror-stable
  aim.x += 0.0;  // canonicalize -0 so atan2 branches identically on both wings
  aim.y += 0.0;
  const double dist = aim.norm();
  const double sigma = kind == KickKind::kShot ? kin::kShotNoiseSigmaPerDist * dist
                                               : kin::kPassNoiseSigma;
  const double theta = std::atan2(aim.y, aim.x) + s.rng.gaussian() * sigma;

  double speed = kin::kShortPassSpeed;
  int air = 0;
  switch (kind) {
    case KickKind::kShortPass: speed = kin::kShortPassSpeed; air = 0; break;
    case KickKind::kLongPass: speed = kin::kLongPassSpeed; air = kin::kLongPassAirSteps; break;
    case KickKind::kHighPass: speed = kin::kHighPassSpeed; air = kin::kHighPassAirSteps; break;
    case KickKind::kShot: speed = kin::kShotSpeed; air = kin::kShotAirSteps; break;
  }

  const Vec2 dir_attack{std::cos(theta), std::sin(theta)};
  s.ball.velocity = to_attack(team, dir_attack) * speed;  // back to absolute
  s.ball.aerial_steps = air;
  s.ball.controller.reset();

  PendingKick pk{team, kicker_id.index, kind, 0};
  if (kind != KickKind::kShot && s.scenario.offside_enabled) {
    const auto& defenders = s.players(other(team));
    double line = -std::numeric_limits<double>::infinity();
    for (const auto& d : defenders) line = std::max(line, to_attack(team, d.position).x);
    for (std::size_t i = 0; i < mates.size(); ++i) {
      if (i == kicker_id.index) continue;
      const double x = to_attack(team, mates[i].position).x;
      if (x > line && x > to_attack(team, from).x && x > 0.0)
        pk.offside_mask |= (1u << i);
    }
  }
  s.pending = pk;
  kicker.kick_cooldown = kin::kKickCooldown;
  s.last_touch = kicker_id;
}

// Awards possession to the given team's player nearest the ball.
void award_possession(MatchState& s, Team team) {
  auto& ps = s.players(team);
  std::size_t best = 0;
  double bestd = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < ps.size(); ++i) {
    const double d = distance2(ps[i].position, s.ball.position);
    if (d < bestd) {
      bestd = d;
      best = i;
    }
  }
  PlayerState& p = ps[best];
  s.ball.position = p.position + p.facing * kin::kCarryOffset;
  s.ball.velocity = p.velocity;
  s.ball.aerial_steps = 0;
  s.ball.controller = PlayerId{team, best};
  s.last_touch = PlayerId{team, best};
  s.pending.reset();
}

void place_players_at_kickoff(MatchState& s) {
  for (Team t : {Team::kHome, Team::kAway}) {
    const auto& init =
        t == Team::kHome ? s.scenario.home_positions : s.scenario.away_positions;
    auto& ps = s.players(t);
    for (std::size_t i = 0; i < ps.size(); ++i) {
      PlayerState& p = ps[i];
      p.position = to_attack(t, init[i]);  // configs are in the attacking frame
      p.velocity = {0.0, 0.0};
      p.facing = attack_dir(t);
      p.sprinting = false;
      p.dribbling = false;
      p.sliding_cooldown = 0;
      p.kick_cooldown = 0;
      p.move_dir = -1;
    }
  }
}

// Goal scored in a non-terminating match: everyone back to kickoff
// positions, conceding side gets the ball at the center.
void kickoff_restart(MatchState& s, Team receiving) {
  place_players_at_kickoff(s);
  s.ball.position = {0.0, 0.0};
  s.ball.velocity = {0.0, 0.0};
  s.ball.aerial_steps = 0;
  s.ball.controller.reset();
  s.pending.reset();
  award_possession(s, receiving);
}

}  // namespace

Vec2 compass_direction(int k, Team team) {
  static const double r = std::sqrt(0.5);
  static const std::array<Vec2, 8> dirs = {{{1.0, 0.0},
                                            {r, r},
                                            {0.0, 1.0},
                                            {-r, r},
                                            {-1.0, 0.0},
                                            {-r, -r},
                                            {0.0, -1.0},
                                            {r, -r}}};
  const Vec2 d = dirs[static_cast<std::size_t>(k & 7)];
  return team == Team::kHome ? d : Vec2{-d.x, -d.y};
}

int nearest_compass(Vec2 absolute_dir, Team team) {
  Vec2 v = team == Team::kHome ? absolute_dir : Vec2{-absolute_dir.x, -absolute_dir.y};
  v.x += 0.0;  // canonicalize -0: atan2(+-0, x<0) would split +-pi
  v.y += 0.0;
  if (v.x == 0.0 && v.y == 0.0) return 0;
  const double ang = std::atan2(v.y, v.x);
  const long k = std::lround(ang / (std::numbers::pi / 4.0));
  return static_cast<int>(((k % 8) + 8) % 8);
}

bool inside_field(const FieldConfig& f, Vec2 p) {
  return std::abs(p.x) <= f.half_length && std::abs(p.y) <= f.half_width;
}

Vec2 goal_center(const FieldConfig& f, Team team) {
  return {attack_sign(team) * f.half_length, 0.0};
}

MatchState reset(const ScenarioConfig& scenario, std::uint64_t seed) {
  validate(scenario);
  MatchState s;
  s.scenario = scenario;
  s.home.resize(scenario.players_per_team);
  s.away.resize(scenario.players_per_team);
  place_players_at_kickoff(s);
  s.ball.position = scenario.ball_position;
  s.ball.velocity = {0.0, 0.0};
  s.rng = Rng(seed);
  return s;
}

StepResult step(MatchState& s, std::span<const Action> home_actions,
                std::span<const Action> away_actions) {
  const std::size_t n = s.scenario.players_per_team;
  if (home_actions.size() != n || away_actions.size() != n)
    throw std::invalid_argument("step: action list length != players per team");
  if (s.finished) throw std::logic_error("step: episode already finished");

  StepContext c{s, {}, false, Team::kHome, false, Team::kHome, false, Team::kHome};
  const FieldConfig& f = s.scenario.field;
  auto action_of = [&](Team t, std::size_t i) {
    return t == Team::kHome ? home_actions[i] : away_actions[i];
  };

  // cooldown clocks
  for (Team t : {Team::kHome, Team::kAway}) {
    for (auto& p : s.players(t)) {
      if (p.sliding_cooldown > 0) --p.sliding_cooldown;
      if (p.kick_cooldown > 0) --p.kick_cooldown;
    }
  }

  // sticky action state (movement heading, sprint, dribble toggle)
  for (Team t : {Team::kHome, Team::kAway}) {
    for (std::size_t i = 0; i < n; ++i) {
      PlayerState& p = s.players(t)[i];
      const Action a = action_of(t, i);
      if (is_move(a)) {
        p.move_dir = move_index(a);
      } else if (a == Action::kReleaseDirection) {
        p.move_dir = -1;
      } else if (a == Action::kSprint) {
        p.sprinting = true;
      } else if (a == Action::kReleaseSprint) {
        p.sprinting = false;
      } else if (a == Action::kDribble) {
        p.dribbling = !p.dribbling;
      }
    }
  }

  // slides: contested ball goes to the closest slider; a slide that reaches
  // an opponent but not the ball is a foul
  {
    struct Attempt {
      Team team;
      std::size_t idx;
      double d2ball;
      bool ball_in_reach;
    };
    std::vector<Attempt> attempts;
    for (Team t : {Team::kHome, Team::kAway}) {
      for (std::size_t i = 0; i < n; ++i) {
        PlayerState& p = s.players(t)[i];
        if (action_of(t, i) != Action::kSlide || p.sliding_cooldown > 0) continue;
        p.sliding_cooldown = kin::kSlideCooldown;
        const double d2 = distance2(p.position, s.ball.position);
        const bool reach = s.ball.aerial_steps == 0 &&
                           d2 <= kin::kSlideRadius * kin::kSlideRadius;
        attempts.push_back({t, i, d2, reach});
      }
    }
    const Attempt* winner = nullptr;
    for (const auto& a : attempts) {
      if (!a.ball_in_reach) continue;
      if (!winner || a.d2ball < winner->d2ball ||
          (a.d2ball == winner->d2ball &&
           std::pair(a.team, a.idx) < std::pair(winner->team, winner->idx)))
        winner = &a;
    }
    if (winner) take_control(c, PlayerId{winner->team, winner->idx});
    for (const auto& a : attempts) {
      if (a.ball_in_reach) continue;
      const auto& opp = s.players(other(a.team));
      const Vec2 at = s.players(a.team)[a.idx].position;
      for (const auto& q : opp) {
        if (distance2(q.position, at) <= kin::kSlideRadius * kin::kSlideRadius) {
          emit(c, EventType::kFoul, a.team);
          break;
        }
      }
    }
  }

  // the carrier's kick (the only consumer of environment randomness)
  if (s.ball.controller) {
    const PlayerId id = *s.ball.controller;
    const Action a = action_of(id.team, id.index);
    if (a == Action::kShot || a == Action::kShortPass || a == Action::kLongPass ||
        a == Action::kHighPass)
      do_kick(c, id, a);
  }

  // movement
  for (Team t : {Team::kHome, Team::kAway}) {
    for (std::size_t i = 0; i < n; ++i) {
      PlayerState& p = s.players(t)[i];
      const bool carrying = s.ball.controller && *s.ball.controller == PlayerId{t, i};
      if (p.move_dir >= 0) {
        const Vec2 dir = compass_direction(p.move_dir, t);
        p.velocity = dir * walk_speed(p, carrying);
        p.facing = dir;
      } else {
        p.velocity = {0.0, 0.0};
      }
      p.position = p.position + p.velocity;
      p.position.x = clampd(p.position.x, -(f.half_length + kin::kPlayerBoundsMargin),
                            f.half_length + kin::kPlayerBoundsMargin);
      p.position.y = clampd(p.position.y, -(f.half_width + kin::kPlayerBoundsMargin),
                            f.half_width + kin::kPlayerBoundsMargin);
      p.tiredness = clampd(
          p.tiredness + (p.sprinting ? kin::kSprintTirednessGain : -kin::kTirednessRecovery),
          0.0, 1.0);
    }
  }

  // ball motion (carried or free)
  const Vec2 ball_old = s.ball.position;
  if (s.ball.controller) {
    const PlayerId id = *s.ball.controller;
    const PlayerState& carrier = s.players(id.team)[id.index];
    s.ball.position = carrier.position + carrier.facing * kin::kCarryOffset;
    s.ball.velocity = carrier.velocity;
  } else {
    s.ball.position = s.ball.position + s.ball.velocity;
    if (s.ball.aerial_steps > 0) {
      --s.ball.aerial_steps;
    } else {
      s.ball.velocity = s.ball.velocity * kin::kBallFriction;
      if (s.ball.velocity.norm() < kin::kBallStopSpeed) s.ball.velocity = {0.0, 0.0};
    }
  }

  // goal / out-of-bounds from the ball's swept segment
  {
    const Vec2 a = ball_old, b = s.ball.position;
    auto crossing_y = [&](double plane) -> std::optional<double> {
      if (a.x == b.x) return std::nullopt;
      if (!((a.x < plane && b.x >= plane) || (a.x > plane && b.x <= plane)))
        return std::nullopt;
      const double t = (plane - a.x) / (b.x - a.x);
      return a.y + (b.y - a.y) * t;
    };
    bool handled = false;
    for (Team attacker : {Team::kHome, Team::kAway}) {
      const double plane = attack_sign(attacker) * f.half_length;
      const auto y = crossing_y(plane);
      if (!y) continue;
      if (std::abs(*y) <= f.goal_half_width && s.last_touch &&
          s.last_touch->team == attacker) {
        // own goals are excluded: a crossing last touched by the defenders
        // falls through to out of bounds below
        if (s.pending && s.pending->kind != KickKind::kShot)
          emit(c, EventType::kPassAttempt, s.pending->team, false);
        s.pending.reset();
        emit(c, EventType::kShotAttempt, attacker, true);
        emit(c, EventType::kGoal, attacker);
        (attacker == Team::kHome ? s.score_home : s.score_away) += 1;
        c.res.scoring_reward_home = attacker == Team::kHome ? 1 : -1;
        c.goal = true;
        c.goal_team = attacker;
        s.ball.controller.reset();
        handled = true;
      }
      break;  // at most one x-plane crossing per step (speeds << field length)
    }
    if (!handled && !inside_field(f, s.ball.position)) {
      const Team charged = s.last_touch ? s.last_touch->team : Team::kHome;
      if (s.pending) {
        if (s.pending->kind == KickKind::kShot)
          emit(c, EventType::kShotAttempt, s.pending->team, false);
        else
          emit(c, EventType::kPassAttempt, s.pending->team, false);
        s.pending.reset();
      }
      emit(c, EventType::kOutOfBounds, charged);
    }
  }

  // players out of bounds end curriculum episodes
  if (s.scenario.terminate_on_score_or_fault) {
    for (Team t : {Team::kHome, Team::kAway}) {
      for (const auto& p : s.players(t)) {
        if (!inside_field(f, p.position)) {
          emit(c, EventType::kOutOfBounds, t);
          break;
        }
      }
    }
  }

  // pickup and steals on a grounded, in-play ball
  if (!c.goal && !c.oob && s.ball.aerial_steps == 0) {
    if (!s.ball.controller) {
      const double r2 = kin::kControlRadius * kin::kControlRadius;
      std::optional<PlayerId> best;
      double bestd = 0.0;
      for (Team t : {Team::kHome, Team::kAway}) {
        for (std::size_t i = 0; i < n; ++i) {
          const PlayerState& p = s.players(t)[i];
          if (p.kick_cooldown > 0) continue;
          const double d2 = distance2(p.position, s.ball.position);
          if (d2 > r2) continue;
          if (!best || d2 < bestd) {
            best = PlayerId{t, i};
            bestd = d2;
          }
        }
      }
      if (best) take_control(c, *best);
    } else {
      const PlayerId cid = *s.ball.controller;
      const PlayerState& carrier = s.players(cid.team)[cid.index];
      const double radius =
          carrier.dribbling ? kin::kStealRadius * 0.5 : kin::kStealRadius;
      const double r2 = radius * radius;
      const auto& opp = s.players(other(cid.team));
      std::optional<std::size_t> best;
      double bestd = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double d2 = distance2(opp[i].position, carrier.position);
        if (d2 > r2) continue;
        if (!best || d2 < bestd) {
          best = i;
          bestd = d2;
        }
      }
      if (best) {
        s.ball.controller = PlayerId{other(cid.team), *best};
        s.last_touch = s.ball.controller;
      }
    }
  }

  s.step += 1;

  // termination / in-match restarts
  if (s.scenario.terminate_on_score_or_fault && (c.goal || c.foul || c.oob)) {
    s.finished = true;
    s.cause = c.goal ? TerminationCause::kGoal
                     : (c.foul ? TerminationCause::kFoul : TerminationCause::kOutOfBounds);
  }
  if (!s.finished && s.step >= s.scenario.episode_step_limit) {
    s.finished = true;
    s.cause = TerminationCause::kStepLimit;
  }
  if (!s.finished && !s.scenario.terminate_on_score_or_fault) {
    if (c.goal)
      kickoff_restart(s, other(c.goal_team));
    else if (c.foul)
      award_possession(s, other(c.foul_team));
    else if (c.oob)
      award_possession(s, other(c.oob_team));
  }

  c.res.terminated = s.finished;
  c.res.cause = s.cause;
  return std::move(c.res);
}

MatchState mirrored(const MatchState& state) {
  auto flip_player = [](const PlayerState& p) {
    PlayerState q = p;
    q.position = -p.position;
    q.velocity = -p.velocity;
    q.facing = -p.facing;
    return q;
  };
  MatchState m;
  m.scenario = state.scenario;
  std::swap(m.scenario.home_positions, m.scenario.away_positions);
  m.scenario.ball_position = -state.scenario.ball_position;
  m.home.reserve(state.away.size());
  for (const auto& p : state.away) m.home.push_back(flip_player(p));
  m.away.reserve(state.home.size());
  for (const auto& p : state.home) m.away.push_back(flip_player(p));
  m.ball.position = -state.ball.position;
  m.ball.velocity = -state.ball.velocity;
  m.ball.aerial_steps = state.ball.aerial_steps;
  if (state.ball.controller)
    m.ball.controller = PlayerId{other(state.ball.controller->team),
                                 state.ball.controller->index};
  m.score_home = state.score_away;
  m.score_away = state.score_home;
  m.step = state.step;
  if (state.last_touch)
    m.last_touch = PlayerId{other(state.last_touch->team), state.last_touch->index};
  if (state.pending) {
    m.pending = *state.pending;
    m.pending->team = other(state.pending->team);
  }
  m.finished = state.finished;
  m.cause = state.cause;
  m.rng.set_state(state.rng.state());
  return m;
}

}  // namespace kickoff::env
