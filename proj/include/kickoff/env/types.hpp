#ifndef KICKOFF_ENV_TYPES_HPP_
#define KICKOFF_ENV_TYPES_HPP_

#include <cstdint>
#include <optional>
#include <vector>

#include "kickoff/common/rng.hpp"
#include "kickoff/common/vec2.hpp"

namespace kickoff::env {

enum class Team : std::uint8_t { kHome = 0, kAway = 1 };

inline Team other(Team t) { return t == Team::kHome ? Team::kAway : Team::kHome; }
inline double attack_sign(Team t) { return t == Team::kHome ? 1.0 : -1.0; }
inline Vec2 attack_dir(Team t) { return {attack_sign(t), 0.0}; }

struct PlayerId {
  Team team;
  std::size_t index;
  bool operator==(const PlayerId&) const = default;
};

// The 18 discrete actions. Movement directions are in the team's attacking
// frame (E = toward the opponent goal for both sides), which keeps the two
// halves of the pitch exactly symmetric for a shared policy.
enum class Action : std::uint8_t {
  kIdle = 0,
  kMoveE,
  kMoveNE,
  kMoveN,
  kMoveNW,
  kMoveW,
  kMoveSW,
  kMoveS,
  kMoveSE,
  kLongPass,
  kHighPass,
  kShortPass,
  kShot,
  kSprint,
  kReleaseDirection,
  kReleaseSprint,
  kSlide,
  kDribble,
};
inline constexpr std::size_t kActionCount = 18;

inline bool is_move(Action a) {
  return a >= Action::kMoveE && a <= Action::kMoveSE;
}
inline int move_index(Action a) { return static_cast<int>(a) - 1; }

// Unit vector of a compass index (0..7) in the team's attacking frame,
// converted to absolute field coordinates.
Vec2 compass_direction(int k, Team team);

// Nearest compass index (attacking frame) pointing along an absolute vector.
int nearest_compass(Vec2 absolute_dir, Team team);

struct FieldConfig {
  double half_length = 1.0;        // field spans x in [-1, 1]
  double half_width = 0.42;        // y in [-0.42, 0.42]
  double goal_half_width = 0.044;  // goal mouth y in [-ghw, ghw]
};

struct ScenarioConfig {
  int id = 0;
  std::size_t players_per_team = 4;
  int episode_step_limit = 500;
  bool terminate_on_score_or_fault = true;
  bool offside_enabled = false;
  double opponent_strength = 1.0;  // reaction gate for the opponent controller
  // Initial positions per team, each in that team's attacking frame
  // (x > 0 = toward the goal the team shoots at).
  std::vector<Vec2> home_positions;
  std::vector<Vec2> away_positions;
  Vec2 ball_position{0.0, 0.0};  // absolute
  std::uint64_t seed = 0;
  FieldConfig field;
};

struct PlayerState {
  Vec2 position;         // absolute
  Vec2 velocity;         // absolute, per step
  Vec2 facing{1.0, 0.0};  // unit, absolute; last movement direction
  double tiredness = 0.0;
  bool sprinting = false;
  bool dribbling = false;
  int sliding_cooldown = 0;
  int kick_cooldown = 0;  // steps until the player may regain a kicked ball
  int move_dir = -1;      // sticky compass heading (attack frame), -1 = released
};

struct BallState {
  Vec2 position;
  Vec2 velocity;
  int aerial_steps = 0;  // > 0 while airborne; airborne ball has no controller
  std::optional<PlayerId> controller;
};

enum class KickKind : std::uint8_t { kShortPass, kLongPass, kHighPass, kShot };

// An in-flight kicked ball, kept until someone controls it or it leaves play.
struct PendingKick {
  Team team;
  std::size_t kicker;
  KickKind kind;
  std::uint32_t offside_mask = 0;  // teammates in an offside spot at kick time
};

enum class EventType : std::uint8_t {
  kPassAttempt,
  kShotAttempt,
  kGoal,
  kInterception,
  kOutOfBounds,
  kFoul,
};

struct Event {
  EventType type;
  Team team;          // acting team (Interception: the intercepting team)
  bool good = false;  // pass reached a teammate / shot scored
  bool operator==(const Event&) const = default;
};

enum class TerminationCause : std::uint8_t { kGoal, kFoul, kOutOfBounds, kStepLimit };

struct MatchState {
  ScenarioConfig scenario;
  std::vector<PlayerState> home;
  std::vector<PlayerState> away;
  BallState ball;
  int score_home = 0;
  int score_away = 0;
  int step = 0;
  std::optional<PlayerId> last_touch;
  std::optional<PendingKick> pending;
  bool finished = false;
  std::optional<TerminationCause> cause;
  Rng rng{0};

  std::vector<PlayerState>& players(Team t) { return t == Team::kHome ? home : away; }
  const std::vector<PlayerState>& players(Team t) const {
    return t == Team::kHome ? home : away;
  }
};

struct StepResult {
  std::vector<Event> events;
  int scoring_reward_home = 0;  // +1 home goal, -1 away goal, else 0
  bool terminated = false;
  std::optional<TerminationCause> cause;
};

// Engine constants. None are externally configurable; the simulator is a
// deterministic kinematic stand-in, not a physics model.
namespace kin {
inline constexpr double kMaxSpeed = 0.012;          // per step, rested walk
inline constexpr double kSprintFactor = 1.5;
inline constexpr double kTirednessSlowdown = 0.3;   // speed *= 1 - 0.3*tiredness
inline constexpr double kDribbleSpeedFactor = 0.9;  // carrier with dribble held
inline constexpr double kSprintTirednessGain = 0.001;
inline constexpr double kTirednessRecovery = 0.0005;
inline constexpr double kShortPassSpeed = 0.03;   // ground
inline constexpr double kLongPassSpeed = 0.045;   // aerial
inline constexpr double kHighPassSpeed = 0.04;    // aerial, higher arc
inline constexpr double kShotSpeed = 0.05;        // aerial
inline constexpr int kLongPassAirSteps = 6;
inline constexpr int kHighPassAirSteps = 10;
inline constexpr int kShotAirSteps = 6;
inline constexpr double kControlRadius = 0.02;
inline constexpr double kStealRadius = 0.01;      // halved against a dribbler
inline constexpr double kSlideRadius = 0.035;
inline constexpr int kSlideCooldown = 20;
inline constexpr int kKickCooldown = 3;
inline constexpr double kBallFriction = 0.97;     // ground, per step
inline constexpr double kBallStopSpeed = 0.002;
inline constexpr double kCarryOffset = 0.01;      // ball rides ahead of carrier
inline constexpr double kShotNoiseSigmaPerDist = 0.3;  // radians per unit distance
inline constexpr double kPassNoiseSigma = 0.06;        // radians
inline constexpr double kPlayerBoundsMargin = 0.05;    // hard clamp outside lines
}  // namespace kin

}  // namespace kickoff::env

#endif  // KICKOFF_ENV_TYPES_HPP_
