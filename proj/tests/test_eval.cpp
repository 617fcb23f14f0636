#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "kickoff/common/rng.hpp"
#include "kickoff/eval/eval.hpp"
#include "kickoff/features/observation.hpp"

using namespace kickoff;
using namespace kickoff::eval;

namespace {

// Sorts the other way and walks backward, so agreement with the production
// code is not an artifact of shared code paths.
double iqm_reference(std::vector<double> values) {
  std::sort(values.begin(), values.end(), std::greater<>());
  const std::size_t trim = values.size() / 4;
  double sum = 0.0;
  std::size_t kept = 0;
  for (std::size_t r = trim; r < values.size() - trim; ++r) {
    sum += values[values.size() - 1 - r];  // ascending traversal
    ++kept;
  }
  return sum / static_cast<double>(kept);
}

env::ScenarioConfig open_pitch(std::size_t n, int limit) {
  env::ScenarioConfig sc;
  sc.players_per_team = n;
  sc.episode_step_limit = limit;
  sc.terminate_on_score_or_fault = false;
  sc.offside_enabled = false;
  std::vector<Vec2> home = {{-0.015, 0.0}, {-0.2, 0.1}};
  std::vector<Vec2> away = {{-0.8, 0.3}, {-0.8, -0.3}};
  while (home.size() < n) {
    home.push_back({-0.3 - 0.1 * static_cast<double>(home.size()), 0.0});
    away.push_back({-0.85, 0.15 * static_cast<double>(away.size())});
  }
  home.resize(n);
  away.resize(n);
  sc.home_positions = home;
  sc.away_positions = away;
  return sc;
}

// All-zero network except a huge bias on one action: the policy plays that
// action every step, which makes event counters predictable.
nn::Mlp action_locked_net(std::size_t n_players, env::Action a) {
  nn::Mlp net({{features::actor_dim(n_players), 8, env::kActionCount}});
  auto params = net.mutable_parameters();
  params[net.bias_offset(1) + static_cast<std::size_t>(a)] = 50.0;
  return net;
}

nn::Mlp uniform_net(std::size_t n_players) {
  return nn::Mlp({{features::actor_dim(n_players), 8, env::kActionCount}});
}

bool same_stats(const MatchStats& a, const MatchStats& b) {
  return metric_values(a) == metric_values(b);
}

}  // namespace

TEST_CASE("iqm trims a quarter from each side and means the rest") {
  CHECK(iqm({1.0, 2.0, 3.0, 4.0}) == 2.5);
  CHECK(iqm({5.0}) == 5.0);
  CHECK(iqm({7.0, 7.0, 7.0, 7.0, 7.0}) == 7.0);
  // n=5 trims one per side: mean of {2,3,4}
  CHECK(iqm({1.0, 2.0, 3.0, 4.0, 100.0}) == 3.0);
  // n=8 trims two per side: mean of {3,4,5,6}
  CHECK(iqm({1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0}) == 4.5);
  CHECK_THROWS_AS(iqm({}), std::invalid_argument);
}

TEST_CASE("iqm matches a brute-force oracle on a thousand random lists") {
  Rng rng(99);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 1 + rng.uniform_index(50);
    std::vector<double> values(n);
    for (auto& v : values) v = (rng.uniform() - 0.5) * 200.0;
    const double got = iqm(values);
    const double want = iqm_reference(values);
    REQUIRE(got == want);

    // order invariance and range bounds
    std::vector<double> shuffled = values;
    for (std::size_t i = shuffled.size(); i > 1; --i) {
      std::swap(shuffled[i - 1], shuffled[rng.uniform_index(i)]);
    }
    REQUIRE(iqm(shuffled) == got);
    REQUIRE(got >= *std::min_element(values.begin(), values.end()));
    REQUIRE(got <= *std::max_element(values.begin(), values.end()));
  }
}

TEST_CASE("population std is computed over every match") {
  CHECK(population_std(std::vector<double>{2.0, 2.0, 2.0}) == 0.0);
  CHECK(population_std(std::vector<double>{1.0, 3.0}) == 1.0);
  CHECK(population_std(std::vector<double>{4.0}) == 0.0);
  const std::vector<double> xs = {1.0, 2.0, 3.0, 4.0};  // var = 1.25
  CHECK(population_std(xs) == doctest::Approx(std::sqrt(1.25)).epsilon(1e-15));
  CHECK_THROWS_AS(population_std(std::vector<double>{}), std::invalid_argument);
}

TEST_CASE("counter algebra violations are rejected") {
  MatchStats ok;
  ok.total_passes = 3;
  ok.good_passes = 2;
  ok.bad_passes = 1;
  CHECK_NOTHROW(ok.validate());

  MatchStats bad_pass = ok;
  bad_pass.bad_passes = 2;
  CHECK_THROWS_AS(bad_pass.validate(), std::logic_error);

  MatchStats bad_shot;
  bad_shot.total_shots = 1;
  bad_shot.good_shots = 1;
  CHECK_THROWS_AS(bad_shot.validate(), std::logic_error);  // goal missing

  MatchStats walk_in;
  walk_in.goals_for = 1;
  CHECK_THROWS_AS(walk_in.validate(), std::logic_error);  // goal without a shot
}

TEST_CASE("metric columns line up with the stats fields") {
  const auto names = metric_names();
  REQUIRE(names.size() == 11);
  MatchStats s;
  s.total_passes = 1;
  s.good_passes = 2;
  s.bad_passes = 3;
  s.total_shots = 4;
  s.good_shots = 5;
  s.bad_shots = 6;
  s.possession_steps = 7;
  s.interceptions_made = 8;
  s.times_intercepted = 9;
  s.goals_for = 10;
  s.goals_against = 11;
  const auto values = metric_values(s);
  REQUIRE(values.size() == names.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    CHECK(values[i] == static_cast<double>(i + 1));
  }
  CHECK(names[0] == "total_passes");
  CHECK(names[6] == "possession_steps");
  CHECK(names[10] == "goals_against");
}

TEST_CASE("a match is deterministic in the seed and leaves the snapshot untouched") {
  const auto sc = open_pitch(2, 300);
  Rng init(3);
  nn::Mlp actor({{features::actor_dim(2), 16, env::kActionCount}}, init);
  const std::vector<double> before(actor.parameters().begin(), actor.parameters().end());

  const auto a = play_match(actor, 0.3, sc, 42);
  const auto b = play_match(actor, 0.3, sc, 42);
  const auto c = play_match(actor, 0.3, sc, 43);
  CHECK(same_stats(a, b));
  CHECK_FALSE(same_stats(a, c));  // fixed seeds chosen to differ
  CHECK(a.possession_steps <= 300);

  const std::vector<double> after(actor.parameters().begin(), actor.parameters().end());
  CHECK(before == after);
}

TEST_CASE("a pass-happy policy racks up pass attempts, never breaking the algebra") {
  const auto sc = open_pitch(2, 250);
  const auto passer = action_locked_net(2, env::Action::kShortPass);
  const auto stats = play_match(passer, 0.05, sc, 7);
  CHECK(stats.total_passes >= 1);
  CHECK(stats.good_passes + stats.bad_passes == stats.total_passes);
  CHECK(stats.possession_steps >= 1);
  CHECK(stats.total_shots == 0);
}

TEST_CASE("a shot-happy policy shoots, and scored shots equal goals") {
  const auto sc = open_pitch(2, 400);
  const auto shooter = action_locked_net(2, env::Action::kShot);
  const auto stats = play_match(shooter, 0.05, sc, 11);
  CHECK(stats.total_shots >= 1);
  CHECK(stats.good_shots + stats.bad_shots == stats.total_shots);
  CHECK(stats.good_shots == stats.goals_for);
  CHECK(stats.total_passes == 0);
}

TEST_CASE("an idle policy generates no offensive events") {
  const auto sc = open_pitch(2, 150);
  const auto idler = action_locked_net(2, env::Action::kIdle);
  const auto stats = play_match(idler, 0.05, sc, 5);
  CHECK(stats.total_passes == 0);
  CHECK(stats.total_shots == 0);
  CHECK(stats.goals_for == 0);
}

TEST_CASE("evaluation aggregates one column per metric") {
  const auto sc = open_pitch(2, 200);
  const auto actor = uniform_net(2);

  const std::vector<std::uint64_t> seeds = {1, 2, 3, 4, 5, 6, 7, 8};
  const auto report = run_evaluation(actor, 0.3, sc, seeds);
  CHECK(report.matches == 8);
  CHECK(report.opponent == "heuristic-0.3");
  CHECK(report.seeds == seeds);
  REQUIRE(report.metrics == metric_names());
  REQUIRE(report.iqm_values.size() == 11);
  REQUIRE(report.std_values.size() == 11);
  for (double sd : report.std_values) CHECK(sd >= 0.0);

  REQUIRE(report.per_match.size() == seeds.size());
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    CHECK(same_stats(report.per_match[i], play_match(actor, 0.3, sc, seeds[i])));
  }

  // bitwise repeatability, including across the thread fan-out
  const auto again = run_evaluation(actor, 0.3, sc, seeds);
  CHECK(report.iqm_values == again.iqm_values);
  CHECK(report.std_values == again.std_values);

  CHECK_THROWS_AS(run_evaluation(actor, 0.3, sc, {}), std::invalid_argument);
}

TEST_CASE("a single match or a repeated seed collapses the spread to zero") {
  const auto sc = open_pitch(2, 200);
  const auto actor = uniform_net(2);

  const std::vector<std::uint64_t> one = {77};
  const auto solo = run_evaluation(actor, 0.4, sc, one);
  const auto direct = play_match(actor, 0.4, sc, 77);
  const auto values = metric_values(direct);
  for (std::size_t m = 0; m < values.size(); ++m) {
    CHECK(solo.iqm_values[m] == values[m]);
    CHECK(solo.std_values[m] == 0.0);
  }

  const std::vector<std::uint64_t> same = {9, 9, 9, 9};
  const auto clones = run_evaluation(actor, 0.4, sc, same);
  for (std::size_t m = 0; m < clones.std_values.size(); ++m) {
    CHECK(clones.std_values[m] == 0.0);
  }
}

TEST_CASE("csv outputs carry one row per match and a two-row aggregate") {
  MatchStats s1;
  s1.total_passes = 2;
  s1.good_passes = 1;
  s1.bad_passes = 1;
  s1.possession_steps = 40;
  MatchStats s2;
  s2.possession_steps = 12;
  const std::vector<MatchStats> stats = {s1, s2};
  const std::vector<std::uint64_t> seeds = {10, 11};

  std::ostringstream match_csv;
  write_match_csv(match_csv, stats, seeds);
  std::istringstream lines(match_csv.str());
  std::string header, row1, row2, extra;
  REQUIRE(std::getline(lines, header));
  REQUIRE(std::getline(lines, row1));
  REQUIRE(std::getline(lines, row2));
  CHECK_FALSE(std::getline(lines, extra));
  CHECK(header ==
        "seed,total_passes,good_passes,bad_passes,total_shots,good_shots,bad_shots,"
        "possession_steps,interceptions_made,times_intercepted,goals_for,goals_against");
  CHECK(row1 == "10,2,1,1,0,0,0,40,0,0,0,0");
  CHECK(row2 == "11,0,0,0,0,0,0,12,0,0,0,0");

  const std::vector<std::uint64_t> bad_seeds = {10};
  std::ostringstream sink;
  CHECK_THROWS_AS(write_match_csv(sink, stats, bad_seeds), std::invalid_argument);

  EvalReport report;
  report.matches = 2;
  report.opponent = "heuristic-0.6";
  report.metrics = metric_names();
  report.iqm_values.assign(11, 1.5);
  report.std_values.assign(11, 0.25);
  std::ostringstream report_csv;
  write_report_csv(report_csv, report);
  std::istringstream rlines(report_csv.str());
  std::string rheader, riqm, rstd;
  REQUIRE(std::getline(rlines, rheader));
  REQUIRE(std::getline(rlines, riqm));
  REQUIRE(std::getline(rlines, rstd));
  CHECK(rheader.rfind("opponent,matches,statistic,total_passes", 0) == 0);
  CHECK(riqm.rfind("heuristic-0.6,2,iqm,1.5,", 0) == 0);
  CHECK(rstd.rfind("heuristic-0.6,2,std,0.25,", 0) == 0);

  std::ostringstream once, twice;
  write_report_csv(once, report);
  write_report_csv(twice, report);
  CHECK(once.str() == twice.str());

  std::ostringstream headerless;
  write_report_csv(headerless, report, false);
  CHECK(rheader + "\n" + headerless.str() == once.str());
}
