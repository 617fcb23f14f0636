#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>
#include <sstream>

#include "kickoff/common/rng.hpp"
#include "kickoff/env/match.hpp"
#include "kickoff/features/observation.hpp"

using namespace kickoff;
using namespace kickoff::env;
using namespace kickoff::features;

namespace {

ScenarioConfig diamond_scenario(std::size_t n = 4) {
  ScenarioConfig sc;
  sc.players_per_team = n;
  sc.episode_step_limit = 500;
  std::vector<Vec2> shape = {{0.0, 0.0}, {-0.2, 0.15}, {-0.2, -0.15}, {-0.4, 0.0}};
  while (shape.size() < n) {
    const double k = static_cast<double>(shape.size());
    shape.push_back({-0.5 - 0.03 * k, (shape.size() % 2 ? 0.1 : -0.1)});
  }
  shape.resize(n);
  sc.home_positions = shape;
  sc.away_positions = shape;
  return sc;
}

struct LayoutRow {
  std::size_t offset = 0;
  std::size_t width = 0;
};

// Parses the generated table back into {encoding -> {name -> row}} plus
// per-encoding total width, checking offsets are consecutive as it goes.
std::map<std::string, std::map<std::string, LayoutRow>> parse_layout(
    const std::string& csv, std::map<std::string, std::size_t>& totals) {
  std::map<std::string, std::map<std::string, LayoutRow>> out;
  std::istringstream in(csv);
  std::string line;
  REQUIRE(std::getline(in, line));
  REQUIRE(line == "encoding,name,offset,width");
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string enc, name, off_s, width_s;
    REQUIRE(std::getline(ls, enc, ','));
    REQUIRE(std::getline(ls, name, ','));
    REQUIRE(std::getline(ls, off_s, ','));
    REQUIRE(std::getline(ls, width_s, ','));
    LayoutRow row{std::stoul(off_s), std::stoul(width_s)};
    REQUIRE(row.offset == totals[enc]);  // consecutive, no gaps
    totals[enc] += row.width;
    out[enc][name] = row;
  }
  return out;
}

}  // namespace

TEST_CASE("positional encoding of id 0 is the alternating [0,1,0,1,...] pattern") {
  const auto pe = positional_encoding(0, 4);
  REQUIRE(pe.size() == 4);
  CHECK(pe[0] == 0.0);
  CHECK(pe[1] == 1.0);
  CHECK(pe[2] == 0.0);
  CHECK(pe[3] == 1.0);
}

TEST_CASE("positional encoding of id 1 matches direct sinusoid evaluation") {
  const auto pe = positional_encoding(1, 4);
  // Oracle: formula evaluated by hand. Frequencies for d=4 are 1 and
  // 10000^(2/4) = 100, so the entries are sin/cos of 1 and of 0.01.
  CHECK(pe[0] == doctest::Approx(0.84147).epsilon(1e-5));
  CHECK(pe[1] == doctest::Approx(0.54030).epsilon(1e-5));
  CHECK(pe[2] == doctest::Approx(0.01000).epsilon(1e-5));
  CHECK(pe[3] == doctest::Approx(0.99995).epsilon(1e-5));
  CHECK(pe[0] == std::sin(1.0));
  CHECK(pe[1] == std::cos(1.0));
  CHECK(pe[2] == std::sin(0.01));
  CHECK(pe[3] == std::cos(0.01));
}

TEST_CASE("positional encodings are distinct across ids and bounded") {
  std::vector<std::vector<double>> pes;
  for (std::size_t id = 0; id < 1000; ++id) {
    pes.push_back(positional_encoding(id, kPeDim));
    for (double v : pes.back()) {
      CHECK(v >= -1.0);
      CHECK(v <= 1.0);
    }
  }
  double min_dist2 = 1e300;
  for (std::size_t a = 0; a < pes.size(); ++a) {
    for (std::size_t b = a + 1; b < pes.size(); ++b) {
      double d2 = 0.0;
      for (std::size_t k = 0; k < kPeDim; ++k) {
        const double d = pes[a][k] - pes[b][k];
        d2 += d * d;
      }
      min_dist2 = std::min(min_dist2, d2);
    }
  }
  CHECK(min_dist2 > 1e-6 * 1e-6);
}

TEST_CASE("odd or zero encoding width is rejected") {
  CHECK_THROWS_AS(positional_encoding(3, 5), std::invalid_argument);
  CHECK_THROWS_AS(positional_encoding(0, 1), std::invalid_argument);
  CHECK_THROWS_AS(positional_encoding(0, 0), std::invalid_argument);
}

TEST_CASE("dimensions match an independent field count and the layout table") {
  for (std::size_t n : {std::size_t{1}, std::size_t{4}, std::size_t{11}}) {
    // Oracle: count the blocks by hand. own 7, ball 4+1+4, teammates
    // 4(n-1), opponents 4n, score/time/offside 3, encoding 16.
    const std::size_t expect_actor = 7 + (4 + 1 + 4) + 4 * (n - 1) + 4 * n + 3 + 16;
    const std::size_t expect_critic = (4 * n) * 2 + (4 + 1) + 3 + 2 + 1;
    CHECK(actor_dim(n) == expect_actor);
    CHECK(critic_dim(n) == expect_critic);

    std::map<std::string, std::size_t> totals;
    parse_layout(layout_csv(n), totals);
    CHECK(totals["actor"] == expect_actor);
    CHECK(totals["critic"] == expect_critic);

    auto sc = diamond_scenario(n);
    MatchState s = reset(sc, 11);
    CHECK(actor_observation(s, Team::kHome, 0).size() == expect_actor);
    CHECK(critic_observation(s).size() == expect_critic);
  }
  CHECK(actor_dim(4) == 63);
  CHECK(critic_dim(4) == 43);
}

TEST_CASE("mirrored away observations equal home observations bit for bit") {
  auto sc = diamond_scenario(4);
  MatchState s = reset(sc, 99);
  Rng rng(1234);
  int compared = 0;
  for (int t = 0; t < 150 && !s.finished; ++t) {
    MatchState m = mirrored(s);
    for (std::size_t i = 0; i < 4; ++i) {
      const auto home_view = actor_observation(s, Team::kHome, i);
      const auto away_in_mirror = actor_observation(m, Team::kAway, i);
      const auto away_view = actor_observation(s, Team::kAway, i);
      const auto home_in_mirror = actor_observation(m, Team::kHome, i);
      REQUIRE(home_view.size() == away_in_mirror.size());
      for (std::size_t k = 0; k < home_view.size(); ++k) {
        REQUIRE(home_view[k] == away_in_mirror[k]);
        REQUIRE(away_view[k] == home_in_mirror[k]);
        REQUIRE(std::isfinite(home_view[k]));
      }
      ++compared;
    }
    for (double v : critic_observation(s)) REQUIRE(std::isfinite(v));
    std::vector<Action> ha, aa;
    for (int i = 0; i < 4; ++i) {
      ha.push_back(static_cast<Action>(rng.uniform_index(kActionCount)));
      aa.push_back(static_cast<Action>(rng.uniform_index(kActionCount)));
    }
    step(s, ha, aa);
  }
  CHECK(compared >= 4);  // walked at least one state
}

TEST_CASE("encoding is a pure function of the state") {
  auto sc = diamond_scenario(4);
  MatchState s = reset(sc, 5);
  CHECK(actor_observation(s, Team::kAway, 2) == actor_observation(s, Team::kAway, 2));
  CHECK(critic_observation(s) == critic_observation(s));
}

TEST_CASE("different agent indices differ inside the encoding block") {
  auto sc = diamond_scenario(4);
  MatchState s = reset(sc, 5);
  const auto a = actor_observation(s, Team::kHome, 1);
  const auto b = actor_observation(s, Team::kHome, 2);
  std::map<std::string, std::size_t> totals;
  auto layout = parse_layout(layout_csv(4), totals);
  const auto pe_row = layout["actor"]["agent_id_encoding"];
  REQUIRE(pe_row.width == kPeDim);
  bool pe_differs = false;
  for (std::size_t k = pe_row.offset; k < pe_row.offset + pe_row.width; ++k) {
    if (a[k] != b[k]) pe_differs = true;
  }
  CHECK(pe_differs);
}

TEST_CASE("agent index out of range is rejected") {
  auto sc = diamond_scenario(2);
  MatchState s = reset(sc, 5);
  CHECK_THROWS_AS(actor_observation(s, Team::kHome, 2), std::out_of_range);
}

TEST_CASE("critic ball block is all zeros at kickoff") {
  auto sc = diamond_scenario(4);
  MatchState s = reset(sc, 3);
  const auto v = critic_observation(s);
  std::map<std::string, std::size_t> totals;
  auto layout = parse_layout(layout_csv(4), totals);
  const auto ball = layout["critic"]["ball"];
  REQUIRE(ball.width == 5);
  for (std::size_t k = ball.offset; k < ball.offset + ball.width; ++k) {
    CHECK(v[k] == 0.0);
  }
  // loose ball at kickoff: possession one-hot reads "none"
  const auto poss = layout["critic"]["possession"];
  CHECK(v[poss.offset + 0] == 0.0);
  CHECK(v[poss.offset + 1] == 0.0);
  CHECK(v[poss.offset + 2] == 1.0);
}

TEST_CASE("states differing only in score differ only in score entries") {
  auto sc = diamond_scenario(4);
  MatchState s = reset(sc, 3);
  MatchState s2 = s;
  s2.score_home = 2;
  s2.score_away = 1;

  std::map<std::string, std::size_t> totals;
  auto layout = parse_layout(layout_csv(4), totals);

  const auto cv = critic_observation(s);
  const auto cv2 = critic_observation(s2);
  const auto score = layout["critic"]["score"];
  for (std::size_t k = 0; k < cv.size(); ++k) {
    if (k >= score.offset && k < score.offset + score.width) {
      CHECK(cv[k] != cv2[k]);
    } else {
      CHECK(cv[k] == cv2[k]);
    }
  }
  CHECK(cv2[score.offset] == 0.2);
  CHECK(cv2[score.offset + 1] == 0.1);

  const auto av = actor_observation(s, Team::kHome, 0);
  const auto av2 = actor_observation(s2, Team::kHome, 0);
  const auto diff = layout["actor"]["score_diff"];
  REQUIRE(diff.width == 1);
  for (std::size_t k = 0; k < av.size(); ++k) {
    if (k == diff.offset) {
      CHECK(av2[k] == 0.1);  // (2-1) * 0.1 from home's view
    } else {
      CHECK(av[k] == av2[k]);
    }
  }
  const auto av2_away = actor_observation(s2, Team::kAway, 0);
  CHECK(av2_away[diff.offset] == -0.1);
}

TEST_CASE("ball control one-hot distinguishes mine, teammate, opponent, loose") {
  auto sc = diamond_scenario(4);
  MatchState s = reset(sc, 3);
  std::map<std::string, std::size_t> totals;
  auto layout = parse_layout(layout_csv(4), totals);
  const std::size_t off = layout["actor"]["ball_control"].offset;

  auto onehot = [&](Team team, std::size_t idx) {
    const auto v = actor_observation(s, team, idx);
    return std::vector<double>(v.begin() + off, v.begin() + off + 4);
  };

  CHECK(onehot(Team::kHome, 0) == std::vector<double>{0, 0, 0, 1});

  s.ball.controller = PlayerId{Team::kHome, 1};
  CHECK(onehot(Team::kHome, 1) == std::vector<double>{1, 0, 0, 0});
  CHECK(onehot(Team::kHome, 0) == std::vector<double>{0, 1, 0, 0});
  CHECK(onehot(Team::kAway, 2) == std::vector<double>{0, 0, 1, 0});
}

TEST_CASE("offside flag trips beyond the last defender, the ball, and halfway") {
  auto sc = diamond_scenario(4);
  MatchState s = reset(sc, 3);
  std::map<std::string, std::size_t> totals;
  auto layout = parse_layout(layout_csv(4), totals);
  const std::size_t off = layout["actor"]["offside_position"].offset;

  // Everyone starts in their own half: nobody is in an offside position.
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(actor_observation(s, Team::kHome, i)[off] == 0.0);
    CHECK(actor_observation(s, Team::kAway, i)[off] == 0.0);
  }

  // Home 0 past every away player (deepest is at x=0.4) and past the ball.
  s.home[0].position = {0.6, 0.0};
  s.ball.position = {0.1, 0.0};
  CHECK(actor_observation(s, Team::kHome, 0)[off] == 1.0);

  // Level with the ball does not count.
  s.ball.position = {0.6, 0.2};
  CHECK(actor_observation(s, Team::kHome, 0)[off] == 0.0);
}
