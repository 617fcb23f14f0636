#include "kickoff/features/observation.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace kickoff::features {
namespace {

using env::Team;

constexpr double kPlayerVelScale = env::kin::kMaxSpeed * env::kin::kSprintFactor;
constexpr double kBallVelScale = env::kin::kShotSpeed;

// Sequential writer; bounds-checked so encoder and layout table cannot
// silently drift apart.
struct Cursor {
  std::span<double> out;
  std::size_t pos = 0;
  void put(double v) {
    if (pos >= out.size()) throw std::logic_error("feature cursor overflow");
    out[pos++] = v;
  }
};

// True when the player sits beyond every opposing outfielder, beyond the
// ball, and inside the opposing half -- all in its own attacking frame.
bool offside_position(const env::MatchState& s, Team team, std::size_t index) {
  const double sign = env::attack_sign(team);
  const auto& me = s.players(team)[index];
  const double my_x = sign * me.position.x;
  if (my_x <= 0.0) return false;
  if (my_x <= sign * s.ball.position.x) return false;
  double last_defender = -s.scenario.field.half_length;
  for (const auto& opp : s.players(env::other(team))) {
    last_defender = std::max(last_defender, sign * opp.position.x);
  }
  return my_x > last_defender;
}

void put_relative(Cursor& c, const env::MatchState& s, Team team,
                  const env::PlayerState& me, const env::PlayerState& other) {
  const double sign = env::attack_sign(team);
  c.put(sign * (other.position.x - me.position.x) / s.scenario.field.half_length);
  c.put(sign * (other.position.y - me.position.y) / s.scenario.field.half_width);
  c.put(sign * other.velocity.x / kPlayerVelScale);
  c.put(sign * other.velocity.y / kPlayerVelScale);
}

}  // namespace

std::vector<double> positional_encoding(std::size_t player_id, std::size_t d_pe) {
  if (d_pe == 0 || d_pe % 2 != 0) {
    throw std::invalid_argument("positional encoding width must be even and positive");
  }
  std::vector<double> out(d_pe);
  const double p = static_cast<double>(player_id);
  const double d = static_cast<double>(d_pe);
  for (std::size_t i = 0; 2 * i < d_pe; ++i) {
    const double denom = std::pow(10000.0, (2.0 * static_cast<double>(i)) / d);
    out[2 * i] = std::sin(p / denom);
    out[2 * i + 1] = std::cos(p / denom);
  }
  return out;
}

std::size_t actor_dim(std::size_t players_per_team, std::size_t d_pe) {
  const std::size_t n = players_per_team;
  return 7 + 9 + 4 * (n - 1) + 4 * n + 3 + d_pe;
}

std::size_t critic_dim(std::size_t players_per_team) {
  return 8 * players_per_team + 5 + 3 + 2 + 1;
}

void actor_observation(const env::MatchState& s, Team team, std::size_t index,
                       std::span<double> out, std::size_t d_pe) {
  const std::size_t n = s.scenario.players_per_team;
  if (index >= n) throw std::out_of_range("agent index");
  if (out.size() != actor_dim(n, d_pe)) throw std::invalid_argument("actor obs size");

  const double sign = env::attack_sign(team);
  const double hl = s.scenario.field.half_length;
  const double hw = s.scenario.field.half_width;
  const auto& mine = s.players(team);
  const auto& theirs = s.players(env::other(team));
  const auto& me = mine[index];
  Cursor c{out};

  c.put(sign * me.position.x / hl);
  c.put(sign * me.position.y / hw);
  c.put(sign * me.velocity.x / kPlayerVelScale);
  c.put(sign * me.velocity.y / kPlayerVelScale);
  c.put(me.tiredness);
  c.put(me.sprinting ? 1.0 : 0.0);
  c.put(me.dribbling ? 1.0 : 0.0);

  c.put(sign * (s.ball.position.x - me.position.x) / hl);
  c.put(sign * (s.ball.position.y - me.position.y) / hw);
  c.put(sign * s.ball.velocity.x / kBallVelScale);
  c.put(sign * s.ball.velocity.y / kBallVelScale);
  c.put(s.ball.aerial_steps > 0 ? 1.0 : 0.0);
  const bool held = s.ball.controller.has_value();
  const bool held_by_us = held && s.ball.controller->team == team;
  c.put(held_by_us && s.ball.controller->index == index ? 1.0 : 0.0);
  c.put(held_by_us && s.ball.controller->index != index ? 1.0 : 0.0);
  c.put(held && !held_by_us ? 1.0 : 0.0);
  c.put(held ? 0.0 : 1.0);

  for (std::size_t j = 0; j < n; ++j) {
    if (j == index) continue;
    put_relative(c, s, team, me, mine[j]);
  }
  for (std::size_t j = 0; j < n; ++j) {
    put_relative(c, s, team, me, theirs[j]);
  }

  const int own_score = team == Team::kHome ? s.score_home : s.score_away;
  const int opp_score = team == Team::kHome ? s.score_away : s.score_home;
  c.put(0.1 * static_cast<double>(own_score - opp_score));
  c.put(static_cast<double>(s.scenario.episode_step_limit - s.step) /
        static_cast<double>(s.scenario.episode_step_limit));
  c.put(offside_position(s, team, index) ? 1.0 : 0.0);

  const auto pe = positional_encoding(index, d_pe);
  for (double v : pe) c.put(v);

  if (c.pos != out.size()) throw std::logic_error("actor obs layout mismatch");
}

std::vector<double> actor_observation(const env::MatchState& s, Team team,
                                      std::size_t index, std::size_t d_pe) {
  std::vector<double> out(actor_dim(s.scenario.players_per_team, d_pe));
  actor_observation(s, team, index, out, d_pe);
  return out;
}

void critic_observation(const env::MatchState& s, std::span<double> out) {
  const std::size_t n = s.scenario.players_per_team;
  if (out.size() != critic_dim(n)) throw std::invalid_argument("critic obs size");
  const double hl = s.scenario.field.half_length;
  const double hw = s.scenario.field.half_width;
  Cursor c{out};

  for (Team team : {Team::kHome, Team::kAway}) {
    for (const auto& p : s.players(team)) {
      c.put(p.position.x / hl);
      c.put(p.position.y / hw);
      c.put(p.velocity.x / kPlayerVelScale);
      c.put(p.velocity.y / kPlayerVelScale);
    }
  }

  c.put(s.ball.position.x / hl);
  c.put(s.ball.position.y / hw);
  c.put(s.ball.velocity.x / kBallVelScale);
  c.put(s.ball.velocity.y / kBallVelScale);
  c.put(s.ball.aerial_steps > 0 ? 1.0 : 0.0);

  const bool held = s.ball.controller.has_value();
  c.put(held && s.ball.controller->team == Team::kHome ? 1.0 : 0.0);
  c.put(held && s.ball.controller->team == Team::kAway ? 1.0 : 0.0);
  c.put(held ? 0.0 : 1.0);

  c.put(0.1 * static_cast<double>(s.score_home));
  c.put(0.1 * static_cast<double>(s.score_away));
  c.put(static_cast<double>(s.scenario.episode_step_limit - s.step) /
        static_cast<double>(s.scenario.episode_step_limit));

  if (c.pos != out.size()) throw std::logic_error("critic obs layout mismatch");
}

std::vector<double> critic_observation(const env::MatchState& s) {
  std::vector<double> out(critic_dim(s.scenario.players_per_team));
  critic_observation(s, out);
  return out;
}

std::string layout_csv(std::size_t players_per_team, std::size_t d_pe) {
  const std::size_t n = players_per_team;
  std::string csv = "encoding,name,offset,width\n";
  std::size_t off = 0;
  auto row = [&](const char* enc, const std::string& name, std::size_t width) {
    char buf[128];
    std::snprintf(buf, sizeof(buf), "%s,%s,%zu,%zu\n", enc, name.c_str(), off, width);
    csv += buf;
    off += width;
  };

  row("actor", "own_kinematics", 4);
  row("actor", "own_status", 3);
  row("actor", "ball_relative", 4);
  row("actor", "ball_aerial", 1);
  row("actor", "ball_control", 4);
  row("actor", "teammates_relative", 4 * (n - 1));
  row("actor", "opponents_relative", 4 * n);
  row("actor", "score_diff", 1);
  row("actor", "time_remaining", 1);
  row("actor", "offside_position", 1);
  row("actor", "agent_id_encoding", d_pe);
  if (off != actor_dim(n, d_pe)) throw std::logic_error("actor layout table mismatch");

  off = 0;
  row("critic", "home_players", 4 * n);
  row("critic", "away_players", 4 * n);
  row("critic", "ball", 5);
  row("critic", "possession", 3);
  row("critic", "score", 2);
  row("critic", "time_remaining", 1);
  if (off != critic_dim(n)) throw std::logic_error("critic layout table mismatch");

  return csv;
}

}  // namespace kickoff::features
