#include "kickoff/env/scenario_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "kickoff/common/binio.hpp"
#include "kickoff/common/digest.hpp"

namespace kickoff::env {
namespace {

std::vector<Vec2> read_positions(const toml::Document& doc, const std::string& key) {
  std::vector<Vec2> out;
  for (const auto& row : doc.at(key).as_array()) {
    const auto& pair = row.as_array();
    if (pair.size() != 2) throw std::runtime_error("scenario: positions need [x, y] pairs");
    out.push_back({pair[0].as_double(), pair[1].as_double()});
  }
  return out;
}

const char* event_name(EventType t) {
  switch (t) {
    case EventType::kPassAttempt: return "pass";
    case EventType::kShotAttempt: return "shot";
    case EventType::kGoal: return "goal";
    case EventType::kInterception: return "interception";
    case EventType::kOutOfBounds: return "out_of_bounds";
    case EventType::kFoul: return "foul";
  }
  return "?";
}

void write_vec2(std::ostream& os, Vec2 v) {
  binio::write_f64(os, v.x);
  binio::write_f64(os, v.y);
}

Vec2 read_vec2(std::istream& is) {
  Vec2 v;
  v.x = binio::read_f64(is);
  v.y = binio::read_f64(is);
  return v;
}

void write_player(std::ostream& os, const PlayerState& p) {
  write_vec2(os, p.position);
  write_vec2(os, p.velocity);
  write_vec2(os, p.facing);
  binio::write_f64(os, p.tiredness);
  binio::write_u64(os, p.sprinting ? 1 : 0);
  binio::write_u64(os, p.dribbling ? 1 : 0);
  binio::write_i64(os, p.sliding_cooldown);
  binio::write_i64(os, p.kick_cooldown);
  binio::write_i64(os, p.move_dir);
}

PlayerState read_player(std::istream& is) {
  PlayerState p;
  p.position = read_vec2(is);
  p.velocity = read_vec2(is);
  p.facing = read_vec2(is);
  p.tiredness = binio::read_f64(is);
  p.sprinting = binio::read_u64(is) != 0;
  p.dribbling = binio::read_u64(is) != 0;
  p.sliding_cooldown = static_cast<int>(binio::read_i64(is));
  p.kick_cooldown = static_cast<int>(binio::read_i64(is));
  p.move_dir = static_cast<int>(binio::read_i64(is));
  return p;
}

void write_opt_player_id(std::ostream& os, const std::optional<PlayerId>& id) {
  binio::write_u64(os, id ? 1 : 0);
  if (id) {
    binio::write_u64(os, static_cast<std::uint64_t>(id->team));
    binio::write_u64(os, id->index);
  }
}

std::optional<PlayerId> read_opt_player_id(std::istream& is) {
  if (binio::read_u64(is) == 0) return std::nullopt;
  PlayerId id;
  id.team = static_cast<Team>(binio::read_u64(is));
  id.index = binio::read_u64(is);
  return id;
}

}  // namespace

ScenarioConfig load_scenario(const toml::Document& doc) {
  ScenarioConfig sc;
  sc.id = static_cast<int>(doc.get_int("scenario.id", 0));
  sc.players_per_team =
      static_cast<std::size_t>(doc.get_int("scenario.players_per_team", 4));
  sc.episode_step_limit = static_cast<int>(doc.get_int("scenario.episode_step_limit", 500));
  sc.terminate_on_score_or_fault =
      doc.get_bool("scenario.terminate_on_score_or_fault", true);
  sc.offside_enabled = doc.get_bool("scenario.offside_enabled", false);
  sc.opponent_strength = doc.get_double("scenario.opponent_strength", 1.0);
  sc.home_positions = read_positions(doc, "scenario.home");
  sc.away_positions = read_positions(doc, "scenario.away");
  if (doc.has("scenario.ball")) {
    auto b = doc.get_double_array("scenario.ball");
    if (b.size() != 2) throw std::runtime_error("scenario: ball needs [x, y]");
    sc.ball_position = {b[0], b[1]};
  }
  sc.seed = static_cast<std::uint64_t>(doc.get_int("scenario.seed", 0));
  sc.field.half_length = doc.get_double("scenario.half_length", sc.field.half_length);
  sc.field.half_width = doc.get_double("scenario.half_width", sc.field.half_width);
  sc.field.goal_half_width =
      doc.get_double("scenario.goal_half_width", sc.field.goal_half_width);
  return sc;
}

ScenarioConfig load_scenario_file(const std::string& path) {
  return load_scenario(toml::Document::parse_file(path));
}

std::string scenario_to_toml(const ScenarioConfig& sc) {
  std::ostringstream os;
  os.precision(17);
  os << "[scenario]\n";
  os << "id = " << sc.id << "\n";
  os << "players_per_team = " << sc.players_per_team << "\n";
  os << "episode_step_limit = " << sc.episode_step_limit << "\n";
  os << "terminate_on_score_or_fault = "
     << (sc.terminate_on_score_or_fault ? "true" : "false") << "\n";
  os << "offside_enabled = " << (sc.offside_enabled ? "true" : "false") << "\n";
  os << "opponent_strength = " << sc.opponent_strength << "\n";
  os << "seed = " << sc.seed << "\n";
  os << "ball = [" << sc.ball_position.x << ", " << sc.ball_position.y << "]\n";
  auto dump = [&](const char* key, const std::vector<Vec2>& ps) {
    os << key << " = [";
    for (std::size_t i = 0; i < ps.size(); ++i) {
      os << (i ? ", [" : "[") << ps[i].x << ", " << ps[i].y << "]";
    }
    os << "]\n";
  };
  dump("home", sc.home_positions);
  dump("away", sc.away_positions);
  os << "half_length = " << sc.field.half_length << "\n";
  os << "half_width = " << sc.field.half_width << "\n";
  os << "goal_half_width = " << sc.field.goal_half_width << "\n";
  return os.str();
}

void write_state(std::ostream& os, const MatchState& s) {
  const ScenarioConfig& sc = s.scenario;
  binio::write_i64(os, sc.id);
  binio::write_u64(os, sc.players_per_team);
  binio::write_i64(os, sc.episode_step_limit);
  binio::write_u64(os, sc.terminate_on_score_or_fault ? 1 : 0);
  binio::write_u64(os, sc.offside_enabled ? 1 : 0);
  binio::write_f64(os, sc.opponent_strength);
  binio::write_u64(os, sc.home_positions.size());
  for (Vec2 v : sc.home_positions) write_vec2(os, v);
  for (Vec2 v : sc.away_positions) write_vec2(os, v);
  write_vec2(os, sc.ball_position);
  binio::write_u64(os, sc.seed);
  binio::write_f64(os, sc.field.half_length);
  binio::write_f64(os, sc.field.half_width);
  binio::write_f64(os, sc.field.goal_half_width);

  for (const auto& p : s.home) write_player(os, p);
  for (const auto& p : s.away) write_player(os, p);
  write_vec2(os, s.ball.position);
  write_vec2(os, s.ball.velocity);
  binio::write_i64(os, s.ball.aerial_steps);
  write_opt_player_id(os, s.ball.controller);
  binio::write_i64(os, s.score_home);
  binio::write_i64(os, s.score_away);
  binio::write_i64(os, s.step);
  write_opt_player_id(os, s.last_touch);
  binio::write_u64(os, s.pending ? 1 : 0);
  if (s.pending) {
    binio::write_u64(os, static_cast<std::uint64_t>(s.pending->team));
    binio::write_u64(os, s.pending->kicker);
    binio::write_u64(os, static_cast<std::uint64_t>(s.pending->kind));
    binio::write_u64(os, s.pending->offside_mask);
  }
  binio::write_u64(os, s.finished ? 1 : 0);
  binio::write_u64(os, s.cause ? 1 + static_cast<std::uint64_t>(*s.cause) : 0);
  for (std::uint64_t w : s.rng.state()) binio::write_u64(os, w);
}

MatchState read_state(std::istream& is) {
  MatchState s;
  ScenarioConfig& sc = s.scenario;
  sc.id = static_cast<int>(binio::read_i64(is));
  sc.players_per_team = binio::read_u64(is);
  sc.episode_step_limit = static_cast<int>(binio::read_i64(is));
  sc.terminate_on_score_or_fault = binio::read_u64(is) != 0;
  sc.offside_enabled = binio::read_u64(is) != 0;
  sc.opponent_strength = binio::read_f64(is);
  const std::uint64_t n = binio::read_u64(is);
  if (n == 0 || n > 16) throw std::runtime_error("state: implausible team size");
  sc.home_positions.resize(n);
  for (auto& v : sc.home_positions) v = read_vec2(is);
  sc.away_positions.resize(n);
  for (auto& v : sc.away_positions) v = read_vec2(is);
  sc.ball_position = read_vec2(is);
  sc.seed = binio::read_u64(is);
  sc.field.half_length = binio::read_f64(is);
  sc.field.half_width = binio::read_f64(is);
  sc.field.goal_half_width = binio::read_f64(is);

  s.home.resize(n);
  for (auto& p : s.home) p = read_player(is);
  s.away.resize(n);
  for (auto& p : s.away) p = read_player(is);
  s.ball.position = read_vec2(is);
  s.ball.velocity = read_vec2(is);
  s.ball.aerial_steps = static_cast<int>(binio::read_i64(is));
  s.ball.controller = read_opt_player_id(is);
  s.score_home = static_cast<int>(binio::read_i64(is));
  s.score_away = static_cast<int>(binio::read_i64(is));
  s.step = static_cast<int>(binio::read_i64(is));
  s.last_touch = read_opt_player_id(is);
  if (binio::read_u64(is) != 0) {
    PendingKick pk;
    pk.team = static_cast<Team>(binio::read_u64(is));
    pk.kicker = binio::read_u64(is);
    pk.kind = static_cast<KickKind>(binio::read_u64(is));
    pk.offside_mask = static_cast<std::uint32_t>(binio::read_u64(is));
    s.pending = pk;
  }
  s.finished = binio::read_u64(is) != 0;
  const std::uint64_t cause = binio::read_u64(is);
  if (cause != 0) s.cause = static_cast<TerminationCause>(cause - 1);
  std::array<std::uint64_t, 4> st;
  for (auto& w : st) w = binio::read_u64(is);
  s.rng.set_state(st);
  return s;
}

std::uint64_t state_digest(const MatchState& s) {
  Digest d;
  auto add_vec = [&](Vec2 v) {
    d.add_f64(v.x);
    d.add_f64(v.y);
  };
  for (const auto& side : {std::cref(s.home), std::cref(s.away)}) {
    for (const auto& p : side.get()) {
      add_vec(p.position);
      add_vec(p.velocity);
      add_vec(p.facing);
      d.add_f64(p.tiredness);
      d.add_u64((p.sprinting ? 1u : 0u) | (p.dribbling ? 2u : 0u));
      d.add_i32(p.sliding_cooldown);
      d.add_i32(p.kick_cooldown);
      d.add_i32(p.move_dir);
    }
  }
  add_vec(s.ball.position);
  add_vec(s.ball.velocity);
  d.add_i32(s.ball.aerial_steps);
  d.add_u64(s.ball.controller
                ? 1 + (static_cast<std::uint64_t>(s.ball.controller->team) << 8) +
                      s.ball.controller->index
                : 0);
  d.add_i32(s.score_home);
  d.add_i32(s.score_away);
  d.add_i32(s.step);
  for (std::uint64_t w : s.rng.state()) d.add_u64(w);
  return d.value();
}

std::string replay_line(const MatchState& after, std::span<const Action> home,
                        std::span<const Action> away, std::span<const Event> events) {
  nlohmann::json j;
  j["step"] = after.step;
  char hex[17];
  std::snprintf(hex, sizeof hex, "%016llx",
                static_cast<unsigned long long>(state_digest(after)));
  j["digest"] = hex;
  auto acts = [](std::span<const Action> as) {
    std::vector<int> out;
    out.reserve(as.size());
    for (Action a : as) out.push_back(static_cast<int>(a));
    return out;
  };
  j["home"] = acts(home);
  j["away"] = acts(away);
  nlohmann::json evs = nlohmann::json::array();
  for (const Event& e : events) {
    evs.push_back({{"type", event_name(e.type)},
                   {"team", e.team == Team::kHome ? "home" : "away"},
                   {"good", e.good}});
  }
  j["events"] = evs;
  return j.dump();
}

}  // namespace kickoff::env
