#include "kickoff/eval/eval.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "kickoff/env/heuristic.hpp"
#include "kickoff/env/match.hpp"
#include "kickoff/features/observation.hpp"
#include "kickoff/nn/categorical.hpp"

namespace kickoff::eval {

void MatchStats::validate() const {
  if (good_passes + bad_passes != total_passes) {
    throw std::logic_error("match stats: pass counters disagree");
  }
  if (good_shots + bad_shots != total_shots) {
    throw std::logic_error("match stats: shot counters disagree");
  }
  if (good_shots != goals_for) {
    throw std::logic_error("match stats: scored shots must equal goals");
  }
}

std::vector<std::string> metric_names() {
  return {"total_passes",       "good_passes",      "bad_passes",
          "total_shots",        "good_shots",       "bad_shots",
          "possession_steps",   "interceptions_made", "times_intercepted",
          "goals_for",          "goals_against"};
}

std::vector<double> metric_values(const MatchStats& s) {
  return {static_cast<double>(s.total_passes),
          static_cast<double>(s.good_passes),
          static_cast<double>(s.bad_passes),
          static_cast<double>(s.total_shots),
          static_cast<double>(s.good_shots),
          static_cast<double>(s.bad_shots),
          static_cast<double>(s.possession_steps),
          static_cast<double>(s.interceptions_made),
          static_cast<double>(s.times_intercepted),
          static_cast<double>(s.goals_for),
          static_cast<double>(s.goals_against)};
}

double iqm(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("iqm: empty input");
  std::sort(values.begin(), values.end());
  const std::size_t trim = values.size() / 4;
  double sum = 0.0;
  for (std::size_t i = trim; i < values.size() - trim; ++i) sum += values[i];
  return sum / static_cast<double>(values.size() - 2 * trim);
}

double population_std(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("std: empty input");
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return std::sqrt(ss / static_cast<double>(values.size()));
}

MatchStats play_match(const nn::Mlp& actor, double opponent_strength,
                      const env::ScenarioConfig& scenario, std::uint64_t seed) {
  Rng rng(seed);
  auto state = env::reset(scenario, rng.next_u64());
  const std::size_t n = scenario.players_per_team;
  MatchStats stats;

  std::vector<env::Action> home(n), away(n);
  while (!state.finished) {
    for (std::size_t i = 0; i < n; ++i) {
      const auto obs = features::actor_observation(state, env::Team::kHome, i);
      home[i] = static_cast<env::Action>(
          nn::sample_categorical(actor.forward(obs), rng).index);
    }
    for (std::size_t i = 0; i < n; ++i) {
      away[i] = env::heuristic_action(state, env::Team::kAway, i, opponent_strength, rng);
    }
    const auto result = env::step(state, home, away);

    for (const auto& e : result.events) {
      const bool ours = e.team == env::Team::kHome;
      switch (e.type) {
        case env::EventType::kPassAttempt:
          if (ours) {
            ++stats.total_passes;
            ++(e.good ? stats.good_passes : stats.bad_passes);
          }
          break;
        case env::EventType::kShotAttempt:
          if (ours) {
            ++stats.total_shots;
            ++(e.good ? stats.good_shots : stats.bad_shots);
          }
          break;
        case env::EventType::kGoal:
          ++(ours ? stats.goals_for : stats.goals_against);
          break;
        case env::EventType::kInterception:
          ++(ours ? stats.interceptions_made : stats.times_intercepted);
          break;
        default:
          break;
      }
    }
    if (state.ball.controller && state.ball.controller->team == env::Team::kHome) {
      ++stats.possession_steps;
    }
  }
  stats.validate();
  return stats;
}

EvalReport run_evaluation(const nn::Mlp& actor, double opponent_strength,
                          const env::ScenarioConfig& scenario,
                          std::span<const std::uint64_t> seeds) {
  if (seeds.empty()) throw std::invalid_argument("evaluation: no seeds");
  std::vector<MatchStats> stats(seeds.size());

  const std::size_t pool = std::min<std::size_t>(seeds.size(), 4);
  std::vector<std::thread> threads;
  threads.reserve(pool);
  for (std::size_t t = 0; t < pool; ++t) {
    threads.emplace_back([&, t] {
      for (std::size_t i = t; i < seeds.size(); i += pool) {
        stats[i] = play_match(actor, opponent_strength, scenario, seeds[i]);
      }
    });
  }
  for (auto& th : threads) th.join();

  EvalReport report;
  report.matches = seeds.size();
  {
    std::ostringstream name;
    name << "heuristic-" << opponent_strength;
    report.opponent = name.str();
  }
  report.seeds.assign(seeds.begin(), seeds.end());
  report.metrics = metric_names();
  for (std::size_t m = 0; m < report.metrics.size(); ++m) {
    std::vector<double> column(stats.size());
    for (std::size_t i = 0; i < stats.size(); ++i) column[i] = metric_values(stats[i])[m];
    report.iqm_values.push_back(iqm(column));
    report.std_values.push_back(population_std(column));
  }
  report.per_match = std::move(stats);
  return report;
}

void write_match_csv(std::ostream& os, std::span<const MatchStats> stats,
                     std::span<const std::uint64_t> seeds) {
  if (stats.size() != seeds.size()) {
    throw std::invalid_argument("match csv: stats/seeds misaligned");
  }
  os << "seed";
  for (const auto& name : metric_names()) os << "," << name;
  os << "\n";
  for (std::size_t i = 0; i < stats.size(); ++i) {
    os << seeds[i];
    for (double v : metric_values(stats[i])) {
      os << "," << static_cast<std::uint64_t>(v);  // raw counters are integral
    }
    os << "\n";
  }
}

void write_report_csv(std::ostream& os, const EvalReport& report, bool include_header) {
  os << std::setprecision(10);
  if (include_header) {
    os << "opponent,matches,statistic";
    for (const auto& name : report.metrics) os << "," << name;
    os << "\n";
  }
  os << report.opponent << "," << report.matches << ",iqm";
  for (double v : report.iqm_values) os << "," << v;
  os << "\n";
  os << report.opponent << "," << report.matches << ",std";
  for (double v : report.std_values) os << "," << v;
  os << "\n";
}

}  // namespace kickoff::eval
